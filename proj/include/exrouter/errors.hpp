#pragma once

#include <stdexcept>
#include <string>

namespace exrouter {

struct NotSymmetric : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct NoActiveReceiver : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoResonance : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutOfBand : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct WrongWireFamily : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LengthMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsortedSites : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoPeak : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace exrouter
