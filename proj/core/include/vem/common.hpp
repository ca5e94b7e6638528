#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vem {

using Index = std::ptrdiff_t;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateElement : public Error { public: using Error::Error; };
class NonPlanarFace : public Error { public: using Error::Error; };
class NonConvexElement : public Error { public: using Error::Error; };
class TopologyError : public Error { public: using Error::Error; };
class SpecError : public Error { public: using Error::Error; };
class SingularMassMatrix : public Error { public: using Error::Error; };
class NumericalBreakdown : public Error { public: using Error::Error; };
class SingularG : public Error { public: using Error::Error; };
class SingularSystem : public Error { public: using Error::Error; };
class UnknownProblem : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };

/// Raised by the mesh loader; carries the offending line and field.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, std::string field)
        : Error(what + " (line " + std::to_string(line) + ", field '" + field + "')"),
          line_(line), field_(std::move(field)) {}
    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    int line_;
    std::string field_;
};

} // namespace vem
