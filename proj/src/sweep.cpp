#include "krein/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "krein/errors.hpp"
#include "krein/point_interaction.hpp"
#include "krein/serialize.hpp"

namespace krein {

std::vector<double> AxisSpec::values() const {
  if (n == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[k] = k == n - 1 ? hi : lo + (hi - lo) * k / (n - 1);
  return out;
}

namespace {

double parse_number(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("malformed grid axis '" + whole + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw ConfigError("malformed grid axis '" + whole + "'");
  return v;
}

}  // namespace

AxisSpec parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (!text.empty() && text.back() == ':') parts.push_back("");

  if (parts.size() == 1) {
    const double v = parse_number(parts[0], text);
    return {v, v, 1};
  }
  if (parts.size() != 3) throw ConfigError("grid axis must be 'value' or 'lo:hi:n', got '" + text + "'");
  AxisSpec a{parse_number(parts[0], text), parse_number(parts[1], text), 0};
  const double n = parse_number(parts[2], text);
  if (n < 1.0 || n != std::floor(n) || n > 1e7) throw ConfigError("grid axis point count must be a positive integer");
  a.n = static_cast<int>(n);
  return a;
}

std::size_t SweepSpec::size() const {
  return static_cast<std::size_t>(zeta.n) * phi.n * xi.n * omega.n;
}

SweepRow evaluate_cell(const ExtParams& p, double param_tol) {
  SweepRow row;
  row.zeta = p.zeta();
  row.phi = p.phi();
  row.xi = p.xi();
  row.omega = p.omega();
  const auto cls = classify(p, param_tol);
  row.stable = cls.is_stable;
  row.upsilon = cls.in_upsilon;
  row.self_adjoint = cls.is_self_adjoint;
  row.chi = cls.chi;
  const auto ep = k_eigenvalues(p, param_tol);
  row.k_plus_abs = std::abs(ep.k_plus);
  row.k_minus_abs = std::abs(ep.k_minus);
  if (cls.is_stable) {
    const auto rep = closed_form_eigenvalues(p, param_tol);
    std::vector<double> eig;
    for (const auto& e : rep.eigenvalues) {
      for (int m = 0; m < e.multiplicity; ++m) eig.push_back(e.r);
    }
    if (!eig.empty()) row.eig1 = eig[0];
    if (eig.size() > 1) row.eig2 = eig[1];
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers, double param_tol) {
  if (workers < 1) throw ConfigError("worker count must be at least 1");
  const double angle = spec.degrees ? kPi / 180.0 : 1.0;
  const auto zs = spec.zeta.values();
  const auto ps = spec.phi.values();
  const auto xs = spec.xi.values();
  const auto ws = spec.omega.values();

  const std::size_t total = spec.size();
  std::vector<SweepRow> rows(total);
  const auto cell = [&](std::size_t idx) {
    std::size_t rest = idx;
    const std::size_t io = rest % ws.size();
    rest /= ws.size();
    const std::size_t ix = rest % xs.size();
    rest /= xs.size();
    const std::size_t ip = rest % ps.size();
    const std::size_t iz = rest / ps.size();
    rows[idx] = evaluate_cell(ExtParams(zs[iz], ps[ip] * angle, xs[ix] * angle, ws[io] * angle), param_tol);
  };

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      try {
        cell(idx);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };

  const int nthreads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), std::max<std::size_t>(total, 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  const auto opt = [](const std::optional<double>& v) { return v ? fmt12(*v) : std::string(); };
  os << "zeta,phi,xi,omega,stable,upsilon,self_adjoint,chi,k_plus_abs,k_minus_abs,eig1,eig2\n";
  for (const auto& r : rows) {
    os << fmt12(r.zeta) << ',' << fmt12(r.phi) << ',' << fmt12(r.xi) << ',' << fmt12(r.omega) << ','
       << int(r.stable) << ',' << int(r.upsilon) << ',' << int(r.self_adjoint) << ',' << opt(r.chi) << ','
       << fmt12(r.k_plus_abs) << ',' << fmt12(r.k_minus_abs) << ',' << opt(r.eig1) << ',' << opt(r.eig2) << '\n';
  }
}

}  // namespace krein
