// Copyright 2026 The uqfi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <Eigen/QR>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "uqfi/closed_forms.hpp"
#include "uqfi/estimation.hpp"
#include "uqfi/qfi.hpp"
#include "uqfi/unruh.hpp"

namespace uqfi::cli {

namespace {

using std::numbers::pi;

struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

std::string g12(double x) { return fmt::format("{:.12g}", x); }

// term := [number] ['*'] ['pi'] ['/' number]
class AngleParser
{
public:
  explicit AngleParser(std::string_view s)
    : s_(s)
  {
  }

  double parse()
  {
    skip_space();
    double value = 0;
    bool   first = true;
    while (pos_ < s_.size()) {
      double sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail();
      }
      value += sign * term();
      first = false;
      skip_space();
    }
    if (first) { fail(); }
    return value;
  }

private:
  double term()
  {
    std::optional<double> coeff;
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      coeff = number();
      skip_space();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        skip_space();
        if (s_.substr(pos_, 2) != "pi") { fail(); }
      }
    }
    bool has_pi = false;
    if (s_.substr(pos_, 2) == "pi") {
      has_pi = true;
      pos_ += 2;
      skip_space();
    }
    if (!coeff && !has_pi) { fail(); }
    double v = coeff.value_or(1.0) * (has_pi ? pi : 1.0);
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      skip_space();
      double const d = number();
      if (d == 0) { fail(); }
      v /= d;
      skip_space();
    }
    return v;
  }

  double number()
  {
    double     v = 0;
    auto const res = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (res.ec != std::errc() || res.ptr == s_.data() + pos_) { fail(); }
    pos_ = std::size_t(res.ptr - s_.data());
    return v;
  }

  void skip_space()
  {
    while (pos_ < s_.size() && s_[pos_] == ' ') { ++pos_; }
  }

  [[noreturn]] void fail() const { throw UsageError(fmt::format("cannot parse angle '{}'", s_)); }

  std::string_view s_;
  std::size_t      pos_ = 0;
};

// ---------------------------------------------------------------------------

struct Options
{
  std::string field = "dirac";
  std::string theta = "pi/4";
  std::string phi = "0";
  std::string r = "0";
  std::string param = "phi";
  std::string out;
  std::string grid_r;
  std::string grid_theta;
  double      tail_tol = 1e-12;
  std::uint64_t seed = 1;
  long        samples = 10000;
  long        trials = 200;
  std::string level = "quick";
  double      tol_scale = 1.0;
};

Field to_field(std::string const &s) { return s == "scalar" ? Field::scalar : Field::dirac; }
Parameter to_param(std::string const &s) { return s == "theta" ? Parameter::theta : Parameter::phi; }

unruh::InputParams point(Options const &o)
{
  unruh::InputParams const p{parse_angle(o.theta), parse_angle(o.phi)};
  try {
    unruh::validate(p);
  } catch (DomainError const &e) {
    throw UsageError(e.what());
  }
  return p;
}

double channel_r(Options const &o, Field field)
{
  double const r = parse_angle(o.r);
  if (field == Field::dirac && !(r >= 0 && r < unruh::kDiracRMax)) { throw UsageError(fmt::format("--r must lie in [0, pi/4) for the dirac field, got {}", g12(r))); }
  if (field == Field::scalar && !(r >= 0 && std::isfinite(r))) { throw UsageError(fmt::format("--r must be finite and >= 0, got {}", g12(r))); }
  return r;
}

void require_field(Options const &o, std::string const &expected, std::string const &command)
{
  if (o.field != expected) { throw UsageError(fmt::format("{} is defined for the {} field only", command, expected)); }
}

// Writes to --out when given, otherwise to stdout.
class Sink
{
public:
  Sink(std::string const &path, std::ostream &fallback)
    : path_(path)
    , stream_(&fallback)
  {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) { throw std::runtime_error(fmt::format("cannot open output file '{}'", path)); }
      stream_ = &file_;
    }
  }

  std::ostream &stream() { return *stream_; }

  void close()
  {
    if (file_.is_open()) {
      file_.close();
      if (!file_) { throw std::runtime_error(fmt::format("failed writing output file '{}'", path_)); }
    }
  }

private:
  std::string   path_;
  std::ofstream file_;
  std::ostream *stream_;
};

// ---------------------------------------------------------------------------
// compute

QfiBreakdown<double> scalar_breakdown(unruh::ScalarBlockState const &s, Parameter which)
{
  QfiBreakdown<double> sum;
  for (auto const &b : s.blocks) {
    if (b.weight <= 1e-300) { continue; }
    ComplexVector phi(2), dphi(2);
    auto const   &damp = which == Parameter::theta ? b.damp_dtheta : b.damp_dphi;
    phi << b.amplitudes[0], b.amplitudes[1];
    dphi << damp[0], damp[1];
    double const                     w[] = {b.weight};
    double const                     dw[] = {which == Parameter::theta ? b.dweight_dtheta : 0.0};
    std::vector<ComplexVector> const v{phi}, dv{dphi};
    auto const                       part = qfi_support<double>(w, v, dw, dv);
    sum.classical += part.classical;
    sum.quantum_avg += part.quantum_avg;
    sum.mixing += part.mixing;
  }
  sum.total = sum.classical + sum.quantum_avg + sum.mixing;
  return sum;
}

int cmd_compute(Options const &o, std::ostream &out)
{
  Field const     field = to_field(o.field);
  Parameter const which = to_param(o.param);
  auto const      p = point(o);
  double const    r = channel_r(o, field);

  double                              closed = 0, spectral = 0;
  std::optional<QfiBreakdown<double>> breakdown;
  std::string                         truncation;
  if (field == Field::dirac) {
    closed = which == Parameter::theta ? closed_forms::dirac_f_theta(p.theta, r).total() : closed_forms::dirac_f_phi(p.theta, r);
    spectral = qfi_spectral(unruh::dirac_channel(p, r), unruh::dirac_channel_derivative(p, r, which));
    if (p.theta > 0 && p.theta < pi / 2) {
      auto const                       e = unruh::dirac_eigensystem(p, r, which);
      double const                     w[] = {e.lambda1, e.lambda2}, dw[] = {e.dlambda1, e.dlambda2};
      std::vector<ComplexVector> const v{e.phi1, e.phi2}, dv{e.dphi1, e.dphi2};
      if (e.lambda2 > 0) {
        breakdown = qfi_support<double>(w, v, dw, dv);
      } else {
        breakdown = qfi_support<double>(std::span(w, 1), std::span(v.data(), 1), std::span(dw, 1), std::span(dv.data(), 1));
      }
    }
  } else {
    auto const s = unruh::scalar_channel(p, r);
    closed = which == Parameter::theta ? closed_forms::scalar_f_theta(p.theta, r) : closed_forms::scalar_f_phi_series(p.theta, r, o.tail_tol).value;
    auto const blocks = unruh::scalar_matrix_blocks(p, r, s.n_max, which);
    spectral = qfi_spectral(blocks.rho, blocks.drho);
    breakdown = scalar_breakdown(s, which);
    truncation = fmt::format("n_max={}\ntail_bound={}\n", s.n_max, g12(s.tail_bound));
  }
  double const diff = std::abs(closed - spectral);
  double const tol = 1e-8 * o.tol_scale;
  out << fmt::format("field={}\nparam={}\ntheta={}\nphi={}\nr={}\n", o.field, o.param, g12(p.theta), g12(p.phi), g12(r));
  out << truncation;
  out << fmt::format("closed_form={}\nspectral={}\nabs_diff={}\n", g12(closed), g12(spectral), g12(diff));
  if (breakdown) {
    out << fmt::format("classical={}\nquantum_avg={}\nmixing={}\nsupport_total={}\n", g12(breakdown->classical), g12(breakdown->quantum_avg),
                       g12(breakdown->mixing), g12(breakdown->total));
  } else {
    out << "breakdown=unavailable (theta at a domain endpoint)\n";
    if (diff > tol) { out << "note=the state changes rank at this theta; the spectral value omits the limiting term\n"; }
  }
  bool const ok = diff <= tol;
  out << fmt::format("status={}\n", ok ? "ok" : "mismatch");
  return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// figures

Grid grid_or(std::string const &text, std::string const &fallback) { return parse_grid(text.empty() ? fallback : text); }

void check_scalar_grid(Grid const &g)
{
  for (double r : {g.start, g.stop}) {
    if (!(r >= 0)) { throw UsageError(fmt::format("r grid must lie in r >= 0, got '{}'", g.text)); }
  }
}

void check_dirac_grid(Grid const &g)
{
  for (double r : {g.start, g.stop}) {
    if (!(r >= 0 && r < unruh::kDiracRMax)) { throw UsageError(fmt::format("r grid must lie in [0, pi/4) for the dirac field, got '{}'", g.text)); }
  }
}

void check_theta_grid(Grid const &g)
{
  for (double t : {g.start, g.stop}) {
    if (!(t >= 0 && t <= pi / 2)) { throw UsageError(fmt::format("theta grid must lie in [0, pi/2], got '{}'", g.text)); }
  }
}

int cmd_fig1a(Options const &o, std::ostream &out, std::ostream &err)
{
  require_field(o, "scalar", "fig1a");
  Grid const grid = grid_or(o.grid_r, "0:3:121");
  check_scalar_grid(grid);
  struct Column
  {
    char const *label;
    double      theta;
  };
  Column const columns[] = {{"pi/20", pi / 20}, {"pi/10", pi / 10}, {"3pi/20", 3 * pi / 20}, {"pi/5", pi / 5}, {"pi/4", pi / 4}};

  std::string body;
  long        unconverged = 0;
  for (double r : grid.points()) {
    body += g12(r);
    for (auto const &c : columns) {
      auto const s = closed_forms::scalar_f_phi_series(c.theta, r, o.tail_tol);
      unconverged += s.converged ? 0 : 1;
      body += "," + g12(s.value);
    }
    body += "\n";
  }
  Sink  sink(o.out, out);
  auto &os = sink.stream();
  os << "# figure=fig1a\n# field=scalar\n# quantity=F_phi\n# method=series\n";
  os << fmt::format("# grid_r={}\n# tail_tol={}\n", grid.text, g12(o.tail_tol));
  os << "r";
  for (auto const &c : columns) { os << ",F_phi(theta=" << c.label << ")"; }
  os << "\n" << body;
  sink.close();
  if (unconverged > 0) {
    err << fmt::format("warning: {} series values did not reach tail tolerance {}\n", unconverged, g12(o.tail_tol));
    return kCheckFailed;
  }
  return kOk;
}

int cmd_fig1b(Options const &o, std::ostream &out)
{
  require_field(o, "scalar", "fig1b");
  Grid const grid = grid_or(o.grid_r, "0:3:121");
  check_scalar_grid(grid);
  std::string body;
  for (double r : grid.points()) { body += g12(r) + "," + g12(closed_forms::delta_f_phi_scalar(r, o.tail_tol)) + "\n"; }
  Sink  sink(o.out, out);
  auto &os = sink.stream();
  os << "# figure=fig1b\n# field=scalar\n# quantity=F_phi(theta=pi/3)-F_phi(theta=pi/6)\n";
  os << fmt::format("# grid_r={}\n# tail_tol={}\n", grid.text, g12(o.tail_tol));
  os << "r,delta_F_phi\n" << body;
  sink.close();
  return kOk;
}

int cmd_fig2(Options const &o, std::ostream &out)
{
  require_field(o, "dirac", "fig2");
  Grid const gt = grid_or(o.grid_theta, "0:pi/2:41");
  Grid const gr = grid_or(o.grid_r, "0:pi/4-1e-6:41");
  check_theta_grid(gt);
  check_dirac_grid(gr);
  std::string body;
  for (double theta : gt.points()) {
    for (double r : gr.points()) { body += g12(theta) + "," + g12(r) + "," + g12(closed_forms::dirac_f_phi(theta, r)) + "\n"; }
  }
  Sink  sink(o.out, out);
  auto &os = sink.stream();
  os << "# figure=fig2\n# field=dirac\n# quantity=F_phi\n";
  os << fmt::format("# grid_theta={}\n# grid_r={}\n", gt.text, gr.text);
  os << "theta,r,F_phi\n" << body;
  sink.close();
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct Check
{
  std::string name;
  double      measured = 0;
  std::string bound; // human-readable pass condition
  bool        pass = false;
};

class Verifier
{
public:
  Verifier(double tol_scale, std::ostream &out)
    : scale_(tol_scale)
    , out_(out)
  {
  }

  // passes when measured <= tol * tol_scale
  void at_most(std::string name, double measured, double tol)
  {
    double const t = tol * scale_;
    record({std::move(name), measured, "<= " + g12(t), measured <= t});
  }

  void positive(std::string name, double measured) { record({std::move(name), measured, "> 0", measured > 0}); }
  void negative(std::string name, double measured) { record({std::move(name), measured, "< 0", measured < 0}); }

  void info(std::string const &name, double value) { out_ << fmt::format("INFO {} value={}\n", name, g12(value)); }

  int finish()
  {
    out_ << fmt::format("{} checks, {} failed\n", total_, failed_);
    return failed_ == 0 ? kOk : kCheckFailed;
  }

private:
  void record(Check const &c)
  {
    ++total_;
    failed_ += c.pass ? 0 : 1;
    out_ << fmt::format("{} {} measured={} bound={}\n", c.pass ? "PASS" : "FAIL", c.name, g12(c.measured), c.bound);
  }

  double        scale_;
  std::ostream &out_;
  int           total_ = 0, failed_ = 0;
};

std::vector<double> linspace(double a, double b, long n)
{
  Grid g;
  g.start = a;
  g.stop = b;
  g.count = n;
  return g.points();
}

void verify_dirac(Verifier &v)
{
  auto const thetas = linspace(0.05, pi / 2 - 0.05, 21);
  auto const rs = linspace(0.0, pi / 4 - 0.01, 21);
  double     f_theta = 0, f_phi = 0, deriv = 0, step = 0, sub = 0, add_theta = 0, add_phi = 0, sld_res = 0, sat = 0;
  for (double theta : thetas) {
    double prev = 0;
    for (std::size_t k = 0; k < rs.size(); ++k) {
      double const             r = rs[k];
      unruh::InputParams const p{theta, 0.3};
      auto const               rho = unruh::dirac_channel(p, r);
      ComplexMatrix const      dth = unruh::dirac_channel_derivative(p, r, Parameter::theta);
      ComplexMatrix const      dph = unruh::dirac_channel_derivative(p, r, Parameter::phi);
      f_theta = std::max(f_theta, std::abs(qfi_spectral(rho, dth) - 4));
      double const closed = closed_forms::dirac_f_phi(theta, r);
      f_phi = std::max(f_phi, std::abs(closed - qfi_spectral(rho, dph)));
      deriv = std::max(deriv, closed_forms::dirac_f_phi_dr(theta, r));
      if (k > 0) { step = std::max(step, closed - prev); }
      prev = closed;

      auto const   s = closed_forms::dirac_subsystem_qfi(theta, r);
      double const fr = qfi_spectral(unruh::reduced_state(rho, Keep::second), unruh::reduced_derivative(dth, Keep::second));
      double const fa = qfi_spectral(unruh::reduced_state(rho, Keep::first), unruh::reduced_derivative(dth, Keep::first));
      sub = std::max({sub, std::abs(fr - s.f_theta_r), std::abs(fa - s.f_theta_a)});
      add_theta = std::max(add_theta, closed_forms::dirac_f_theta(theta, r).total() - (s.f_theta_a + s.f_theta_r));
      add_phi = std::max(add_phi, (s.f_phi_a + s.f_phi_r) - closed);

      for (auto const *d : {&dth, &dph}) {
        ComplexMatrix const l = sld(rho, *d);
        auto const         &sd = rho.spectrum();
        ComplexMatrix const res = sd.eigenvectors.adjoint() * (*d - (rho.matrix() * l + l * rho.matrix()) / 2.0) * sd.eigenvectors;
        for (Index i = 0; i < 4; ++i)
          for (Index j = 0; j < 4; ++j)
            if (sd.eigenvalues[i] + sd.eigenvalues[j] > 1e-12) { sld_res = std::max(sld_res, std::abs(res(i, j))); }
        auto const povm = estimation::optimal_povm(rho, *d);
        auto const pr = estimation::outcome_probabilities(povm, rho.matrix());
        auto const dp = estimation::outcome_probabilities(povm, *d);
        sat = std::max(sat, std::abs(estimation::classical_fisher(pr, dp) - qfi_spectral(rho, *d)));
      }
    }
  }
  v.at_most("dirac.f_theta_is_4", f_theta, 1e-10);
  v.at_most("dirac.f_phi_closed_vs_spectral", f_phi, 1e-10);
  v.at_most("dirac.f_phi_spot_6/7", std::abs(closed_forms::dirac_f_phi(pi / 4, pi / 6) - 6.0 / 7), 1e-12);
  v.at_most("dirac.f_phi_dr_max", deriv, 0.0);
  v.at_most("dirac.f_phi_grid_increase_max", step, 1e-12);
  double lim = 0;
  for (double theta : thetas) { lim = std::max(lim, std::abs(closed_forms::dirac_f_phi(theta, pi / 4 - 1e-6) - closed_forms::dirac_f_phi_limit(theta))); }
  v.at_most("dirac.f_phi_limit", lim, 1e-5);
  v.at_most("dirac.subsystem_spectral", sub, 1e-9);
  v.at_most("dirac.f_theta_subadditivity_violation", add_theta, 1e-12);
  v.at_most("dirac.f_phi_superadditivity_violation", add_phi, 1e-12);
  v.at_most("dirac.sld_residual", sld_res, 1e-9);
  v.at_most("dirac.povm_saturation", sat, 1e-8);

  double bures = 0;
  for (int k = 0; k < 10; ++k) {
    double const              theta = 0.15 + 0.125 * k, r = 0.05 + 0.07 * k;
    ParametrizedState<double> st;
    st.rho_at = [&](double x) { return unruh::dirac_channel({theta, x}, r); };
    double const f = qfi_spectral(unruh::dirac_channel({theta, 1.0}, r), unruh::dirac_channel_derivative({theta, 1.0}, r, Parameter::phi));
    bures = std::max(bures, std::abs(qfi_from_bures(st, 1.0).value - f) / f);
  }
  v.at_most("dirac.bures_relative", bures, 1e-3);
}

void verify_scalar(Verifier &v)
{
  auto const thetas = linspace(pi / 20, 9 * pi / 20, 9);
  double     f_theta = 0, tails = 0, hyper = 0, spectral = 0;
  for (double theta : thetas) {
    for (double r : linspace(0.0, 3.0, 13)) {
      long const n = unruh::scalar_truncation(r);
      tails = std::max(tails, unruh::scalar_tail_bound(r, n));
      auto const b = unruh::scalar_matrix_blocks({theta, 0.2}, r, n, Parameter::theta);
      f_theta = std::max(f_theta, std::abs(qfi_spectral(b.rho, b.drho) - 4));
      auto const   bp = unruh::scalar_matrix_blocks({theta, 0.2}, r, n, Parameter::phi);
      double const series = closed_forms::scalar_f_phi_series(theta, r).value;
      spectral = std::max(spectral, std::abs(series - qfi_spectral(bp.rho, bp.drho)));
      if (r > 0) { hyper = std::max(hyper, std::abs(series - closed_forms::scalar_f_phi_hyper(theta, r))); }
    }
  }
  v.at_most("scalar.truncation_tail", tails, 1e-12);
  v.at_most("scalar.f_theta_is_4", f_theta, 1e-8);
  v.at_most("scalar.series_vs_spectral", spectral, 1e-8);
  v.at_most("scalar.series_vs_hypergeometric", hyper, 1e-9);

  double step = 0;
  for (double theta : {pi / 20, pi / 10, 3 * pi / 20, pi / 5, pi / 4}) {
    double prev = closed_forms::scalar_f_phi_series(theta, 0).value;
    for (double r : linspace(0, 3, 121)) {
      double const cur = closed_forms::scalar_f_phi_series(theta, r).value;
      step = std::max(step, cur - prev);
      prev = cur;
    }
  }
  v.at_most("scalar.f_phi_grid_increase_max", step, 1e-12);
  v.at_most("scalar.delta_f_phi_at_0", std::abs(closed_forms::delta_f_phi_scalar(0)), 1e-12);
  v.positive("scalar.delta_f_phi_at_0.2", closed_forms::delta_f_phi_scalar(0.2));
  v.negative("scalar.delta_f_phi_at_5", closed_forms::delta_f_phi_scalar(5));
  v.positive("scalar.f_phi_lower_bound_at_r10", closed_forms::scalar_f_phi_series(pi / 4, 10).lower);

  // least-squares fit F(r) = L + A exp(-2 r) + B exp(-4 r) over r = 3..10
  Eigen::Matrix<double, 8, 3> a;
  Eigen::Matrix<double, 8, 1> y;
  for (int r = 3; r <= 10; ++r) {
    a.row(r - 3) << 1.0, std::exp(-2.0 * r), std::exp(-4.0 * r);
    y(r - 3) = closed_forms::scalar_f_phi_series(pi / 4, r).value;
  }
  Eigen::Vector3d const coef = a.colPivHouseholderQr().solve(y);
  v.info("scalar.f_phi_extrapolated_limit(theta=pi/4)", coef(0));
}

int cmd_verify(Options const &o, std::ostream &out)
{
  if (o.level != "quick" && o.level != "full") { throw UsageError("--level must be quick or full"); }
  if (!(o.tol_scale > 0)) { throw UsageError("--tol-scale must be positive"); }
  Verifier v(o.tol_scale, out);
  verify_dirac(v);
  if (o.level == "full") { verify_scalar(v); }
  return v.finish();
}

// ---------------------------------------------------------------------------
// estimate

int cmd_estimate(Options const &o, std::ostream &out)
{
  estimation::EstimationRun run;
  run.field = to_field(o.field);
  run.truth = point(o);
  run.r = channel_r(o, run.field);
  run.target = to_param(o.param);
  run.samples = o.samples;
  run.trials = o.trials;
  run.seed = o.seed;
  estimation::EstimationReport rep;
  try {
    rep = estimation::simulate_crb(run);
  } catch (DomainError const &e) {
    throw UsageError(e.what());
  }
  out << fmt::format("field={}\nparam={}\ntheta={}\nphi={}\nr={}\n", o.field, o.param, g12(run.truth.theta), g12(run.truth.phi), g12(run.r));
  out << fmt::format("seed={}\nsamples={}\ntrials={}\n", rep.seed, rep.samples, rep.trials);
  out << fmt::format("qfi={}\nmean={}\nvariance={}\ncrb_ratio={}\nnoise_floor={}\n", g12(rep.qfi), g12(rep.mean), g12(rep.variance), g12(rep.crb_ratio),
                     g12(rep.noise_floor));
  bool const ok = rep.crb_ratio >= rep.noise_floor;
  out << fmt::format("status={}\n", ok ? "ok" : "below_bound");
  return ok ? kOk : kCheckFailed;
}

} // namespace

double parse_angle(std::string_view text) { return AngleParser(text).parse(); }

std::vector<double> Grid::points() const
{
  std::vector<double> p(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) { p[std::size_t(i)] = start + (stop - start) * double(i) / double(count - 1); }
  p.back() = stop;
  return p;
}

Grid parse_grid(std::string const &text)
{
  auto const a = text.find(':');
  auto const b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos || text.find(':', b + 1) != std::string::npos) { throw UsageError(fmt::format("grid '{}' must have the form start:stop:count", text)); }
  Grid g;
  g.text = text;
  g.start = parse_angle(std::string_view(text).substr(0, a));
  g.stop = parse_angle(std::string_view(text).substr(a + 1, b - a - 1));
  std::string_view const c = std::string_view(text).substr(b + 1);
  auto const             res = std::from_chars(c.data(), c.data() + c.size(), g.count);
  if (res.ec != std::errc() || res.ptr != c.data() + c.size()) { throw UsageError(fmt::format("grid '{}': count must be an integer", text)); }
  if (g.count < 2) { throw UsageError(fmt::format("grid '{}': count must be >= 2", text)); }
  if (!(g.stop > g.start)) { throw UsageError(fmt::format("grid '{}': stop must exceed start", text)); }
  return g;
}

int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Quantum Fisher information of two-qubit states under the Unruh channel", "uqfi"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read key=value defaults from a file; command-line flags take precedence");

  Options o;
  app.add_option("--field", o.field, "Field: scalar or dirac")->check(CLI::IsMember({"scalar", "dirac"}))->capture_default_str();
  app.add_option("--theta", o.theta, "Weight parameter theta (radians; accepts pi/4, 3pi/20, ...)")->capture_default_str();
  app.add_option("--phi", o.phi, "Phase parameter phi (radians)")->capture_default_str();
  app.add_option("--r", o.r, "Acceleration parameter r")->capture_default_str();
  app.add_option("--param", o.param, "Estimated parameter: theta or phi")->check(CLI::IsMember({"theta", "phi"}))->capture_default_str();
  app.add_option("--out", o.out, "Output CSV path (default: standard output)");
  app.add_option("--grid-r", o.grid_r, "r grid start:stop:count");
  app.add_option("--grid-theta", o.grid_theta, "theta grid start:stop:count");
  app.add_option("--tail-tol", o.tail_tol, "Series tail tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", o.seed, "64-bit RNG seed")->capture_default_str();
  app.add_option("--samples", o.samples, "Measurements per trial")->capture_default_str();
  app.add_option("--trials", o.trials, "Number of trials")->capture_default_str();
  app.add_option("--level", o.level, "verify level: quick or full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  app.add_option("--tol-scale", o.tol_scale, "Multiply verify tolerances (for testing the failure path)")->capture_default_str();

  auto *compute = app.add_subcommand("compute", "QFI at one point: closed form, spectral route and support breakdown");
  auto *fig1a = app.add_subcommand("fig1a", "Scalar F_phi against r for theta = pi/20 .. pi/4");
  auto *fig1b = app.add_subcommand("fig1b", "Scalar F_phi(pi/3) - F_phi(pi/6) against r");
  auto *fig2 = app.add_subcommand("fig2", "Dirac F_phi over (theta, r)");
  auto *verify = app.add_subcommand("verify", "Run the invariant checks");
  auto *estimate = app.add_subcommand("estimate", "Monte Carlo Cramer-Rao check in the SLD eigenbasis");
  for (auto *sub : {compute, fig1a, fig1b, fig2, verify, estimate}) { sub->fallthrough(); }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (CLI::ParseError const &e) {
    int const code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compute) { return cmd_compute(o, out); }
    if (*fig1a) { return cmd_fig1a(o, out, err); }
    if (*fig1b) { return cmd_fig1b(o, out); }
    if (*fig2) { return cmd_fig2(o, out); }
    if (*verify) { return cmd_verify(o, out); }
    if (*estimate) { return cmd_estimate(o, out); }
  } catch (UsageError const &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (DomainError const &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (std::exception const &e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}

} // namespace uqfi::cli
