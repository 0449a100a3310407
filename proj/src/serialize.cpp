#include "krein/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "krein/errors.hpp"

namespace krein {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(fmt12(v));
}

json to_json(const CMat2& m) {
  json arr = json::array();
  for (const auto& v : m.entries()) arr.push_back(json::array({num(v.real()), num(v.imag())}));
  return arr;
}

CMat2 cmat2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw ConfigError("matrix JSON must be an array of four [re, im] pairs");
  std::array<cplx, 4> e{};
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& p = j[k];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw ConfigError("matrix entry must be [re, im]");
    }
    e[k] = cplx(p[0].get<double>(), p[1].get<double>());
  }
  return {e[0], e[1], e[2], e[3]};
}

json to_json(const ExtParams& p) {
  return {{"zeta", num(p.zeta())}, {"phi", num(p.phi())}, {"xi", num(p.xi())}, {"omega", num(p.omega())}};
}

ExtParams ext_params_from_json(const json& j) {
  for (const char* key : {"zeta", "phi", "xi", "omega"}) {
    if (!j.contains(key) || !j[key].is_number()) throw ConfigError(std::string("parameter '") + key + "' missing");
  }
  return {j["zeta"].get<double>(), j["phi"].get<double>(), j["xi"].get<double>(), j["omega"].get<double>()};
}

json to_json(const ExtensionClass& c) {
  return {{"upsilon", c.in_upsilon},
          {"self_adjoint", c.is_self_adjoint},
          {"stable", c.is_stable},
          {"chi", c.chi ? num(*c.chi) : json(nullptr)}};
}

json to_json(const SpectrumReport& rep) {
  json eig = json::array();
  for (const auto& e : rep.eigenvalues) {
    eig.push_back({{"r", num(e.r)}, {"mult", e.multiplicity}, {"channel", to_string(e.channel)}, {"residual", num(e.residual)}});
  }
  return {{"eigenvalues", eig},
          {"interval", json::array({num(rep.scan_interval.lo), num(rep.scan_interval.hi)})},
          {"method", to_string(rep.method)}};
}

json to_json(const MatchReport& rep) {
  json roots = json::array();
  for (double r : rep.roots) roots.push_back(num(r));
  json degenerate = json::array();
  for (double r : rep.degenerate) degenerate.push_back(num(r));
  json residuals = json::array();
  for (double r : rep.root_residuals) residuals.push_back(num(r));
  return {{"roots", roots},
          {"degenerate", degenerate},
          {"root_residuals", residuals},
          {"dephased", rep.dephased},
          {"warnings", rep.warnings}};
}

void write_det_trace_csv(std::ostream& os, const MatchReport& rep) {
  os << "r,re_det,im_det\n";
  for (const auto& s : rep.det_trace) {
    os << fmt12(s.r) << ',' << fmt12(s.det.real()) << ',' << fmt12(s.det.imag()) << '\n';
  }
}

}  // namespace krein
