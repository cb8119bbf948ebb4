#include "logdec/reglog.hpp"

#include <iomanip>

namespace logdec {

void RegLogScheme::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("reglog: sigma must be finite and >= 0");
  if (n_roots < 1) throw std::invalid_argument("reglog: n_roots must be >= 1");
  if (!(p >= 1.0)) throw std::invalid_argument("reglog: p must be >= 1");
}

std::string to_string(RegLogScheme::Kind kind) {
  switch (kind) {
    case RegLogScheme::Kind::bare: return "bare";
    case RegLogScheme::Kind::shift_imag: return "shift_imag";
    case RegLogScheme::Kind::root_average: return "root_average";
    case RegLogScheme::Kind::rational: return "rational";
  }
  return "?";
}

RegLogScheme::Kind parse_reglog_kind(const std::string& name) {
  if (name == "bare") return RegLogScheme::Kind::bare;
  if (name == "shift_imag") return RegLogScheme::Kind::shift_imag;
  if (name == "root_average") return RegLogScheme::Kind::root_average;
  if (name == "rational") return RegLogScheme::Kind::rational;
  throw std::invalid_argument("unknown reglog scheme '" + name + "'");
}

UnitIntervalRule make_unit_interval_rule(int decades, int per_panel) {
  if (decades < 0 || per_panel < 1) throw std::invalid_argument("make_unit_interval_rule: bad panel counts");
  UnitIntervalRule r;
  r.x.reserve(std::size_t(decades + 1) * per_panel);
  r.w.reserve(r.x.capacity());
  auto panel = [&](double a, double b) {
    const double h = (b - a) / per_panel;
    for (int i = 0; i < per_panel; ++i) {
      r.x.push_back(a + (i + 0.5) * h);
      r.w.push_back(h);
    }
  };
  for (int d = 0; d < decades; ++d) panel(std::pow(10.0, -(d + 1)), std::pow(10.0, -d));
  panel(0.0, std::pow(10.0, -decades));
  return r;
}

const UnitIntervalRule& default_unit_interval_rule() {
  static const UnitIntervalRule rule = make_unit_interval_rule();
  return rule;
}

double l2_norm_unit_interval(const Eigen::Ref<const Eigen::VectorXd>& samples) {
  if (samples.size() == 0) throw std::invalid_argument("l2_norm_unit_interval: no samples");
  if (!samples.allFinite()) throw std::domain_error("l2_norm_unit_interval: non-finite sample");
  return std::sqrt(samples.squaredNorm() / double(samples.size()));
}

std::vector<SweepRow> regularization_sweep(const std::vector<RegLogScheme>& schemes, const std::vector<double>& sigmas) {
  std::vector<SweepRow> rows;
  for (const auto& base : schemes) {
    for (double sigma : sigmas) {
      if (!std::isfinite(sigma)) throw std::invalid_argument("regularization_sweep: non-finite sigma");
      RegLogScheme s = base;
      s.sigma = sigma;
      s.validate();
      const double err = rel_distance([](double x) { return std::log(x); },
                                      [&](double x) { return reg_ln(s, x); });
      rows.push_back({to_string(s.kind), sigma, err});
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "scheme,sigma,err\n";
  os << std::setprecision(10);
  for (const auto& r : rows) os << r.scheme << ',' << r.sigma << ',' << r.err << '\n';
}

}  // namespace logdec
