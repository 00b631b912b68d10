#pragma once

#include <stdexcept>
#include <string>

namespace pairgen {

// Base of every error raised by the library. Callers that only care about
// "something numerical went wrong" catch this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument sits on a pole of Gamma or the 2F1 series.
class PoleError : public Error {
public:
    using Error::Error;
};

// Result magnitude outside the double range; use the log-space variant.
class OverflowError : public Error {
public:
    using Error::Error;
};

// Series or iteration did not reach tolerance within its cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// c-a-b integral when the z -> 1-z connection formula is requested.
class DegenerateParameterError : public Error {
public:
    using Error::Error;
};

// Argument outside the domain of an operation (y not in (0,1), etc.).
class DomainError : public Error {
public:
    using Error::Error;
};

// Adiabatic frequency squared went negative.
class ImaginaryFrequencyError : public Error {
public:
    using Error::Error;
};

// |alpha|^2 - |beta|^2 drifted away from 1.
class ConstraintViolation : public Error {
public:
    using Error::Error;
};

// Adaptive integrator step size collapsed.
class StepUnderflowError : public Error {
public:
    using Error::Error;
};

// Plateau / peak detection could not find the requested feature.
class DetectionError : public Error {
public:
    using Error::Error;
};

// Least-squares fit cannot resolve the model on the given grid.
class IllConditionedError : public Error {
public:
    using Error::Error;
};

// Output file or directory could not be written.
class IoError : public Error {
public:
    using Error::Error;
};

// Configuration rejected before any computation started.
class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace pairgen
