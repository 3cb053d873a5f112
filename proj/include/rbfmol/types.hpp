#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace rbfmol {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Base for all library errors so callers can catch one type when a run must
// degrade to a NaN table cell instead of aborting.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeError : Error {
    using Error::Error;
};
struct SingularGradientError : Error {
    using Error::Error;
};
struct RetractionFailure : Error {
    using Error::Error;
};
struct SamplingError : Error {
    using Error::Error;
};
struct NotSpdError : Error {
    using Error::Error;
};
struct SingularMassError : Error {
    SingularMassError(const std::string& what, int index_) : Error(what), index(index_) {}
    int index;  // offending diagonal entry
};
struct EigensolverError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

// Deterministic uniform RNG. std::uniform_real_distribution is
// implementation-defined, so draws are derived from raw mt19937_64 output to
// keep sampled point sets byte-identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // uniform in [0,1)
    double uniform() {
        return static_cast<double>(state_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t next_u64() { return state_(); }

  private:
    std::mt19937_64 state_;  // engine output is fully specified; distributions are not
};

}  // namespace rbfmol
