#include "frhs/config.hpp"

#include "frhs/error.hpp"

#include <cmath>

namespace frhs {

namespace {

double* field(Tolerances& t, const std::string& name) {
  if (name == "jacobi") return &t.jacobi;
  if (name == "alpha_floor") return &t.alpha_floor;
  if (name == "nr") return &t.nr;
  if (name == "nr_finsler") return &t.nr_finsler;
  if (name == "phiprime") return &t.phiprime;
  if (name == "denom_floor") return &t.denom_floor;
  if (name == "curvature_agree") return &t.curvature_agree;
  if (name == "g_fd") return &t.g_fd;
  if (name == "cartan_fd") return &t.cartan_fd;
  return nullptr;
}

}  // namespace

const std::vector<std::string>& Tolerances::names() {
  static const std::vector<std::string> kNames = {"jacobi",   "alpha_floor",    "nr",
                                                  "nr_finsler", "phiprime",     "denom_floor",
                                                  "curvature_agree", "g_fd",    "cartan_fd"};
  return kNames;
}

void Tolerances::set(const std::string& name, double value) {
  double* f = field(*this, name);
  if (!f) throw Error(ErrorCode::InvalidModel, "unknown tolerance '" + name + "'");
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::InvalidModel, "tolerance '" + name + "' must be a positive finite number");
  }
  *f = value;
}

double Tolerances::get(const std::string& name) const {
  double* f = field(const_cast<Tolerances&>(*this), name);
  if (!f) throw Error(ErrorCode::InvalidModel, "unknown tolerance '" + name + "'");
  return *f;
}

}  // namespace frhs
