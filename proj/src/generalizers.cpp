#include "gnewton/generalizers.hpp"

#include <algorithm>

namespace gnewton {

std::string_view Generalizer::name() const noexcept {
  switch (kind_) {
    case GeneralizerKind::Identity: return "identity";
    case GeneralizerKind::Cube: return "cube";
    case GeneralizerKind::Sinh: return "sinh";
    case GeneralizerKind::Exp: return "exp";
    case GeneralizerKind::Tan: return "tan";
  }
  return "identity";
}

double Generalizer::apply(double t) const {
  switch (kind_) {
    case GeneralizerKind::Identity: return t;
    case GeneralizerKind::Cube: return t * t * t;
    case GeneralizerKind::Sinh: return std::sinh(t);
    case GeneralizerKind::Exp: return std::exp(t);
    case GeneralizerKind::Tan: return std::tan(t);
  }
  return t;
}

double Generalizer::invert(double y) const {
  switch (kind_) {
    case GeneralizerKind::Identity: return y;
    case GeneralizerKind::Cube: return std::cbrt(y);
    case GeneralizerKind::Sinh: return std::asinh(y);
    case GeneralizerKind::Exp: return std::log(y);
    case GeneralizerKind::Tan: return std::atan(y);
  }
  return y;
}

double Generalizer::derivative(double t) const {
  switch (kind_) {
    case GeneralizerKind::Identity: return 1.0;
    case GeneralizerKind::Cube: return 3.0 * t * t;
    case GeneralizerKind::Sinh: return std::cosh(t);
    case GeneralizerKind::Exp: return std::exp(t);
    case GeneralizerKind::Tan: {
      const double c = std::cos(t);
      return 1.0 / (c * c);
    }
  }
  return 1.0;
}

double Generalizer::inverse_derivative(double y) const {
  switch (kind_) {
    case GeneralizerKind::Identity: return 1.0;
    case GeneralizerKind::Cube: {
      const double r = std::cbrt(y);
      return 1.0 / (3.0 * r * r);
    }
    case GeneralizerKind::Sinh: return 1.0 / std::sqrt(1.0 + y * y);
    case GeneralizerKind::Exp: return 1.0 / y;
    case GeneralizerKind::Tan: return 1.0 / (1.0 + y * y);
  }
  return 1.0;
}

Complex Generalizer::apply(Complex t) const {
  switch (kind_) {
    case GeneralizerKind::Identity: return t;
    case GeneralizerKind::Cube: return t * t * t;
    case GeneralizerKind::Sinh: return std::sinh(t);
    case GeneralizerKind::Exp: return std::exp(t);
    case GeneralizerKind::Tan: return std::tan(t);
  }
  return t;
}

Complex Generalizer::invert(Complex y) const {
  switch (kind_) {
    case GeneralizerKind::Identity: return y;
    case GeneralizerKind::Cube:
      if (y.imag() == 0.0) return {std::cbrt(y.real()), 0.0};
      return std::pow(y, 1.0 / 3.0);
    case GeneralizerKind::Sinh: return std::asinh(y);
    case GeneralizerKind::Exp: return std::log(y);
    case GeneralizerKind::Tan: return std::atan(y);
  }
  return y;
}

Complex Generalizer::derivative(Complex t) const {
  switch (kind_) {
    case GeneralizerKind::Identity: return 1.0;
    case GeneralizerKind::Cube: return 3.0 * t * t;
    case GeneralizerKind::Sinh: return std::cosh(t);
    case GeneralizerKind::Exp: return std::exp(t);
    case GeneralizerKind::Tan: {
      const Complex c = std::cos(t);
      return 1.0 / (c * c);
    }
  }
  return 1.0;
}

bool Generalizer::evaluable(const VecN& x) const {
  return std::all_of(x.begin(), x.end(), [this](double t) {
    if (!std::isfinite(t)) return false;
    if (kind_ == GeneralizerKind::Tan && std::cos(t) == 0.0) return false;
    return std::isfinite(apply(t)) && std::isfinite(derivative(t));
  });
}

bool Generalizer::valid_point(const VecN& x) const {
  if (!evaluable(x)) return false;
  return std::all_of(x.begin(), x.end(), [this](double t) {
    switch (kind_) {
      case GeneralizerKind::Cube: return t != 0.0;
      case GeneralizerKind::Tan: return std::abs(t) < std::numbers::pi / 2;
      default: return true;
    }
  });
}

bool Generalizer::valid_image(const VecN& y) const {
  return std::all_of(y.begin(), y.end(), [this](double t) {
    return std::isfinite(t) && (kind_ != GeneralizerKind::Exp || t > 0.0);
  });
}

const std::vector<std::string>& generalizer_names() {
  static const std::vector<std::string> names{"identity", "cube", "sinh", "exp", "tan"};
  return names;
}

Generalizer make_generalizer(std::string_view name) {
  if (name == "identity") return Generalizer(GeneralizerKind::Identity);
  if (name == "cube") return Generalizer(GeneralizerKind::Cube);
  if (name == "sinh") return Generalizer(GeneralizerKind::Sinh);
  if (name == "exp") return Generalizer(GeneralizerKind::Exp);
  if (name == "tan") return Generalizer(GeneralizerKind::Tan);
  throw Error(ErrorKind::UnknownGeneralizer, "no generalizer named '" + std::string(name) + "'");
}

bool check_singularity(const Generalizer& s, const VecN& x) {
  const VecN d = s.jacobian_diagonal(x);
  return std::any_of(d.begin(), d.end(), [](double v) { return !(std::abs(v) >= kSingularDerivative); });
}

}  // namespace gnewton
