// SPDX-License-Identifier: MIT
#include "starwalk/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "starwalk/kernels.hpp"
#include "starwalk/linalg.hpp"
#include "starwalk/quadrature.hpp"
#include "starwalk/scattering.hpp"
#include "starwalk/special.hpp"
#include "verify_internal.hpp"

namespace starwalk {

namespace verify_detail {

void Collector::sep() {
  if (!first_) details_ << "; ";
  first_ = false;
}

void Collector::add(const std::string& check, double measured,
                    double allowed) {
  sep();
  details_ << check << "=" << measured << " (allowed " << allowed << ")";
  const double ratio =
      allowed > 0.0 ? measured / allowed
                    : (measured == 0.0 ? 0.0 : 2.0);
  if (!(measured < allowed)) {
    pass_ = false;
    details_ << " FAIL";
  }
  if (ratio > worst_ || !std::isfinite(ratio)) worst_ = ratio;
}

void Collector::require(const std::string& check, bool ok) {
  sep();
  details_ << check << (ok ? " ok" : " FAIL");
  if (!ok) {
    pass_ = false;
    worst_ = std::max(worst_, 2.0);
  }
}

void Collector::note(const std::string& text) {
  sep();
  details_ << text;
}

TestReport Collector::report() const {
  TestReport r;
  r.name = name_;
  r.pass = pass_;
  r.statistic = worst_;
  r.bound = 1.0;
  r.n_samples = n_samples_;
  r.details = details_.str();
  return r;
}

}  // namespace verify_detail

using verify_detail::Collector;

// ---------------------------------------------------------------------------
// Public checks
// ---------------------------------------------------------------------------

TestReport laplace_consistency(const ProcessParams& p,
                               const std::vector<double>& lambdas,
                               const std::vector<double>& xs,
                               double rel_tol) {
  validate(p);
  for (double v : lambdas)
    if (!(v > 0.0))
      throw std::invalid_argument("laplace_consistency: lambdas must be > 0");
  for (double v : xs)
    if (!(v > 0.0))
      throw std::invalid_argument("laplace_consistency: xs must be > 0");

  TestReport rep;
  rep.name = std::string("laplace-consistency[") + regime_name(p.regime) + "]";
  rep.bound = rel_tol;
  std::ostringstream det;
  double worst = -1.0;

  // The vertex kernels associated with the boundary parameters, paired with
  // their closed-form Laplace transforms e^{-sqrt(2 lambda) x} * rho:
  //   first-hitting density        <->  rho = 1
  //   g_{beta,0}      (beta > 0)   <->  rho = 1/(beta + sqrt(2 lambda))
  //   g_{0,gamma}     (gamma > 0)  <->  rho = 1/(sqrt(2 lambda) + gamma lambda)
  //   g_{beta,gamma}  (both > 0)   <->  rho = 1/(beta + sqrt(2 lambda) + gamma lambda)
  struct Pair {
    const char* what;
    std::function<double(double, double)> kernel;   // (t, x)
    std::function<double(double)> rho;              // (lambda)
  };
  std::vector<Pair> pairs;
  pairs.push_back({"hitting", [](double t, double x) { return hitting_density(t, x); },
                   [](double) { return 1.0; }});
  const double beta = p.beta, gamma = p.gamma;
  if (beta > 0.0 && gamma == 0.0)
    pairs.push_back({"g_beta0",
                     [beta](double t, double x) { return g_beta0(t, x, beta); },
                     [beta](double l) { return 1.0 / (beta + std::sqrt(2.0 * l)); }});
  if (beta == 0.0 && gamma > 0.0)
    pairs.push_back({"g_0gamma",
                     [gamma](double t, double x) { return g_0gamma(t, x, gamma); },
                     [gamma](double l) {
                       return 1.0 / (std::sqrt(2.0 * l) + gamma * l);
                     }});
  if (beta > 0.0 && gamma > 0.0)
    pairs.push_back({"g_betagamma",
                     [beta, gamma](double t, double x) {
                       return g_betagamma(t, x, beta, gamma);
                     },
                     [beta, gamma](double l) {
                       return 1.0 / (beta + std::sqrt(2.0 * l) + gamma * l);
                     }});

  QuadratureConfig qc;
  qc.abs_tol = 1e-12;
  qc.max_subdiv = 4000;
  for (const Pair& pr : pairs) {
    for (double lambda : lambdas) {
      for (double x : xs) {
        const double closed = e_lambda(lambda, x) * pr.rho(lambda);
        auto f = [&](double t) {
          if (t <= 0.0) return 0.0;
          return std::exp(-lambda * t) * pr.kernel(t, x);
        };
        const QuadResult q = integrate_halfline(f, 0.0, qc);
        const double err = std::abs(q.value - closed) / std::abs(closed);
        if (err > worst) {
          worst = err;
          det.str("");
          det << "worst: " << pr.what << " lambda=" << lambda << " x=" << x
              << " closed=" << closed << " numeric=" << q.value
              << " rel=" << err << " (quad err " << q.abs_error << ")";
        }
      }
    }
  }

  rep.statistic = worst;
  rep.pass = worst < rel_tol;
  rep.details = det.str();
  return rep;
}

TestReport chapman_kolmogorov(const ProcessParams& p, GraphPoint source,
                              double s, double t,
                              const std::vector<GraphPoint>& targets,
                              double tol, bool dirichlet) {
  validate(p);
  if (!(s > 0.0) || !(t > 0.0))
    throw std::invalid_argument("chapman_kolmogorov: s, t must be > 0");
  TestReport rep;
  rep.name = std::string("chapman-kolmogorov[") +
             (dirichlet ? "dirichlet" : regime_name(p.regime)) + "]";
  rep.bound = tol;

  auto at = [&](GraphPoint from, double dt_) {
    return dirichlet ? dirichlet_transition(p.n_edges, from, dt_)
                     : transition(p, from, dt_);
  };
  const KernelMeasure ks = at(source, s);
  const KernelMeasure direct = at(source, s + t);
  const KernelMeasure from_v = at(GraphPoint::vertex(), t);
  const bool has_atom = !dirichlet && (p.regime == Regime::Sticky ||
                                       p.regime == Regime::General ||
                                       p.regime == Regime::AbsorbedKilled);

  QuadratureConfig qc;
  qc.abs_tol = tol * 1e-2;
  qc.max_subdiv = 4000;

  // Integrate the mid-time state over every edge, then add the flow through
  // the vertex atom (if the regime carries one).
  auto composed = [&](const std::function<double(const KernelMeasure&)>& get,
                      double atom_value) {
    double sum = 0.0;
    for (int j = 1; j <= p.n_edges; ++j) {
      auto f = [&](double z) {
        const double w = ks.density(j, z);
        if (w == 0.0) return 0.0;
        return w * get(at(GraphPoint::on_edge(j, z), t));
      };
      sum += integrate_halfline(f, 0.0, qc).value;
    }
    if (ks.atom() > 0.0) sum += ks.atom() * atom_value;
    return sum;
  };

  double worst = 0.0;
  std::ostringstream det;
  auto record = [&](const char* what, int edge, double y, double lhs,
                    double rhs) {
    const double err = std::abs(lhs - rhs);
    if (err > worst) {
      worst = err;
      det.str("");
      det << "worst: " << what;
      if (edge) det << " (" << edge << "," << y << ")";
      det << " composed=" << lhs << " direct=" << rhs;
    }
  };

  for (const GraphPoint& tgt : targets) {
    const double lhs = composed(
        [&](const KernelMeasure& k) { return k.density(tgt.edge, tgt.x); },
        from_v.density(tgt.edge, tgt.x));
    record("density", tgt.edge, tgt.x, lhs, direct.density(tgt.edge, tgt.x));
  }
  if (has_atom) {
    const double lhs =
        composed([&](const KernelMeasure& k) { return k.atom(); },
                 from_v.atom());
    record("atom", 0, 0.0, lhs, direct.atom());
  }

  rep.statistic = worst;
  rep.pass = worst < tol;
  rep.details = det.str();
  return rep;
}

TestReport generator_domain_check(const ProcessParams& p, double lambda,
                                  double abs_floor) {
  validate(p);
  if (!(lambda > 0.0))
    throw std::invalid_argument("generator_domain_check: lambda must be > 0");
  const BoundaryCondition bc = boundary_from_process(p);

  // Test function: f_m(y) = (1 + 0.3 m y) e^{-y}; continuous at the vertex
  // with f(v) = 1, smooth and integrable on every edge.
  auto f = [](int m, double y) { return (1.0 + 0.3 * m * y) * std::exp(-y); };
  const double fv = 1.0;

  QuadratureConfig qc;
  qc.abs_tol = 1e-12;
  qc.max_subdiv = 4000;

  // u = R_lambda f by quadrature against the closed-form resolvent kernel.
  auto u = [&](GraphPoint xi) {
    const KernelMeasure r = resolvent(p, xi, lambda);
    double total = r.atom() * fv;
    for (int m = 1; m <= p.n_edges; ++m) {
      if (p.regime == Regime::AbsorbedKilled && !xi.is_vertex() &&
          m != xi.edge)
        continue;  // killed motion never changes edge
      auto integrand = [&](double y) { return r.density(m, y) * f(m, y); };
      // The resolvent density has a kink at y = xi.x on the source edge;
      // integrate the smooth pieces separately (the finite differences
      // below amplify any quadrature error by 1/h^2).
      const double kink = (!xi.is_vertex() && m == xi.edge) ? xi.x : 0.0;
      if (kink > 0.0)
        total += integrate(integrand, 0.0, kink, qc).value +
                 integrate_halfline(integrand, kink, qc).value;
      else
        total += integrate_halfline(integrand, 0.0, qc).value;
    }
    return total;
  };

  const double uv = u(GraphPoint::vertex());
  const double h = 0.02;

  // One-sided first derivative along edge k, second-order stencil with one
  // Richardson step; returns {value, error indicator}.
  struct Fd {
    double value, indicator;
  };
  auto d1 = [&](int k) {
    auto stencil = [&](double hh) {
      return (-3.0 * uv + 4.0 * u(GraphPoint::on_edge(k, hh)) -
              u(GraphPoint::on_edge(k, 2.0 * hh))) /
             (2.0 * hh);
    };
    const double a = stencil(h), b = stencil(h / 2.0);
    return Fd{(4.0 * b - a) / 3.0, std::abs(b - a) / 3.0};
  };
  auto d2 = [&](int k) {
    auto stencil = [&](double hh) {
      return (2.0 * uv - 5.0 * u(GraphPoint::on_edge(k, hh)) +
              4.0 * u(GraphPoint::on_edge(k, 2.0 * hh)) -
              u(GraphPoint::on_edge(k, 3.0 * hh))) /
             (hh * hh);
    };
    const double a = stencil(h), b = stencil(h / 2.0);
    return Fd{(4.0 * b - a) / 3.0, std::abs(b - a) / 3.0};
  };

  double bsum_d1 = 0.0, d1_err = 0.0;
  for (int k = 1; k <= p.n_edges; ++k) {
    if (bc.b[k - 1] == 0.0) continue;
    const Fd g = d1(k);
    bsum_d1 += bc.b[k - 1] * g.value;
    d1_err += bc.b[k - 1] * g.indicator;
  }
  const Fd upp = d2(1);

  const double residual = bc.a * uv + 0.5 * bc.c * upp.value - bsum_d1;
  const double fd_bound = 3.0 * (0.5 * bc.c * upp.indicator + d1_err);
  const double bound = std::max(abs_floor, fd_bound);

  // Independent handle on u'' at the vertex: away from the vertex u solves
  // lambda u - u''/2 = f, and u'' extends continuously, so
  // u''(v) = 2 (lambda u(v) - f(v)).
  const double upp_identity = 2.0 * (lambda * uv - fv);
  const double upp_dev = std::abs(upp.value - upp_identity);
  const double upp_tol =
      std::max(30.0 * upp.indicator, 10.0 * abs_floor);

  // Edge-continuity of u at the vertex.
  double cont = 0.0;
  for (int k = 1; k <= p.n_edges; ++k)
    cont = std::max(cont,
                    std::abs(u(GraphPoint::on_edge(k, 1e-4)) - uv));
  const double cont_tol = 5e-4;

  TestReport rep;
  rep.name = std::string("boundary-residual[") + regime_name(p.regime) + "]";
  rep.statistic = std::abs(residual);
  rep.bound = bound;
  rep.pass = std::abs(residual) < bound && upp_dev < upp_tol &&
             cont < cont_tol;
  std::ostringstream det;
  det << "u(v)=" << uv << " residual=" << residual << " (bound " << bound
      << "); u''(v) fd=" << upp.value << " vs 2(lambda u - f)="
      << upp_identity << " dev=" << upp_dev << " (tol " << upp_tol
      << "); vertex continuity dev=" << cont << " (tol " << cont_tol << ")";
  rep.details = det.str();
  return rep;
}

TestReport mass_check(const ProcessParams& p, GraphPoint source,
                      const std::vector<double>& times, double tol) {
  validate(p);
  if (times.empty())
    throw std::invalid_argument("mass_check: need at least one time");
  TestReport rep;
  rep.name = std::string("kernel-mass[") + regime_name(p.regime) + "]";
  rep.bound = tol;

  QuadratureConfig qc;
  qc.abs_tol = 1e-11;
  qc.max_subdiv = 4000;

  std::vector<double> m;
  m.reserve(times.size());
  for (double t : times) m.push_back(transition(p, source, t, qc).mass());

  const bool conservative =
      p.regime == Regime::Walsh || p.regime == Regime::Sticky;
  double worst = 0.0;
  std::ostringstream det;
  det << "mass(t)=";
  for (std::size_t i = 0; i < m.size(); ++i) {
    det << (i ? ", " : "") << m[i];
    if (conservative) {
      worst = std::max(worst, std::abs(m[i] - 1.0));
    } else {
      worst = std::max(worst, m[i] - 1.0);        // must stay below 1
      worst = std::max(worst, -m[i]);             // and above 0
      if (i) worst = std::max(worst, m[i] - m[i - 1]);  // non-increasing
    }
  }
  det << (conservative ? " (conservative)" : " (sub-Markov, non-increasing)");
  rep.statistic = std::max(worst, 0.0);
  rep.pass = rep.statistic < tol;
  rep.details = det.str();
  return rep;
}

bool all_pass(const std::vector<TestReport>& reports) {
  for (const TestReport& r : reports)
    if (!r.pass) return false;
  return !reports.empty();
}

std::string reports_to_json(const std::vector<TestReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const TestReport& r : reports) {
    arr.push_back({{"name", r.name},
                   {"pass", r.pass},
                   {"statistic", r.statistic},
                   {"bound", r.bound},
                   {"n_samples", r.n_samples},
                   {"details", r.details}});
  }
  return arr.dump(2);
}

// ---------------------------------------------------------------------------
// Acceptance criteria (analytic half)
// ---------------------------------------------------------------------------

namespace verify_detail {

namespace {

// Fold a raw-statistic public report into a collector as one subcheck.
void fold(Collector& c, const TestReport& r) {
  c.add(r.name, r.statistic, r.bound);
  if (!r.pass && r.statistic < r.bound)
    c.require(r.name + " subchecks", false);  // failed a secondary condition
}

double max_field_dev(const ProcessParams& a, const ProcessParams& b) {
  double d = a.regime == b.regime ? 0.0 : 1.0;
  d = std::max(d, std::abs(static_cast<double>(a.n_edges - b.n_edges)));
  d = std::max(d, std::abs(a.beta - b.beta));
  d = std::max(d, std::abs(a.gamma - b.gamma));
  if (a.w.size() != b.w.size()) return std::max(d, 1.0);
  for (std::size_t i = 0; i < a.w.size(); ++i)
    d = std::max(d, std::abs(a.w[i] - b.w[i]));
  return d;
}

double max_bc_dev(const BoundaryCondition& a, const BoundaryCondition& b) {
  double d = std::max(std::abs(a.a - b.a), std::abs(a.c - b.c));
  if (a.b.size() != b.b.size()) return std::max(d, 1.0);
  for (std::size_t i = 0; i < a.b.size(); ++i)
    d = std::max(d, std::abs(a.b[i] - b.b[i]));
  return d;
}

std::vector<ProcessParams> regime_zoo() {
  return {
      make_walsh({1.0}),
      make_walsh({0.5, 0.3, 0.2}),
      make_elastic({0.6, 0.4}, 0.5),
      make_elastic({0.25, 0.25, 0.5}, 2.0),
      make_sticky({0.5, 0.5}, 0.7),
      make_sticky({0.1, 0.9}, 3.0),
      make_general({0.6, 0.4}, 0.4, 0.6),
      make_general({0.3, 0.3, 0.4}, 2.0, 0.1),
      make_absorbed(2, 0.0),
      make_absorbed(2, 0.4),
      make_absorbed(3, 2.0),
  };
}

}  // namespace

TestReport criterion_classification() {
  Collector c("classification-roundtrip");

  // Worked example: a=0.2, b=(0.3, 0.2), c=0.3 classifies as the combined
  // sticky/elastic regime with w=(0.6, 0.4), beta=0.4, gamma=0.6.
  const StarGraph g2(2);
  const BoundaryCondition ex{0.2, {0.3, 0.2}, 0.3};
  const ProcessParams pe = classify_boundary(g2, ex);
  c.require("example regime General", pe.regime == Regime::General);
  double dev = std::abs(pe.w[0] - 0.6);
  dev = std::max(dev, std::abs(pe.w[1] - 0.4));
  dev = std::max(dev, std::abs(pe.beta - 0.4));
  dev = std::max(dev, std::abs(pe.gamma - 0.6));
  c.add("example reduced parameters", dev, 1e-12);

  // Round trips through both representations, every regime.
  double worst = 0.0;
  for (const ProcessParams& p : regime_zoo()) {
    const BoundaryCondition bc = boundary_from_process(p);
    const StarGraph g(p.n_edges);
    const ProcessParams back = classify_boundary(g, bc);
    worst = std::max(worst, max_field_dev(p, back));
    const BoundaryCondition bc2 = boundary_from_process(back);
    worst = std::max(worst, max_bc_dev(bc, bc2));
  }
  c.add("round-trip deviation", worst, 1e-12);

  // a = 1 (b = 0, c = 0) admits no process and must be rejected by name.
  bool rejected = false;
  try {
    classify_boundary(g2, BoundaryCondition{1.0, {0.0, 0.0}, 0.0});
  } catch (const std::invalid_argument& e) {
    rejected = std::string(e.what()).find("a != 1") != std::string::npos;
  }
  c.require("rejects a = 1 naming the constraint", rejected);
  return c.report();
}

TestReport criterion_scattering_algebra() {
  Collector c("scattering-algebra");
  const double tol_alg = 1e-12, tol_lim = 1e-10;

  // Walsh, one dominant edge: explicit matrix, involution, determinant.
  {
    const ProcessParams p = make_walsh({1.0, 0.0, 0.0});
    const Mat s = process_smatrix(p, 1.0);
    Mat expect = Mat::identity(3).scaled(-1.0);
    expect(0, 0) = 1.0;
    expect(1, 0) = 2.0;
    expect(2, 0) = 2.0;
    c.add("walsh n=3 w=(1,0,0) matrix", s.max_abs_diff(expect), tol_alg);
    c.add("walsh involution S^2=I",
          (s * s).max_abs_diff(Mat::identity(3)), tol_alg);
    c.add("walsh det - (-1)^(n+1)", std::abs(det(s) - 1.0), tol_alg);
    c.add("walsh lambda-independence",
          s.max_abs_diff(process_smatrix(p, 7.5)), tol_alg);
  }
  // Equal weights: S_km = 2/n - delta_km.
  {
    const ProcessParams p = make_walsh({0.25, 0.25, 0.25, 0.25});
    const Mat s = process_smatrix(p, 2.0);
    double dev = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        dev = std::max(dev,
                       std::abs(s(i, j) - (0.5 - (i == j ? 1.0 : 0.0))));
    c.add("walsh equal-weight closed form", dev, tol_alg);
    c.add("walsh n=4 det +1 on -1", std::abs(det(s) + 1.0), tol_alg);
  }
  // Weighted symmetry: D_w S is symmetric at every lambda.
  {
    const ProcessParams p = make_general({0.6, 0.4}, 0.4, 0.6);
    double dev = 0.0;
    for (double lambda : {0.5, 1.0, 2.5}) {
      const Mat s = process_smatrix(p, lambda);
      Mat ds(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ds(i, j) = p.w[i] * s(i, j);
      dev = std::max(dev, ds.max_abs_diff(ds.transposed()));
    }
    c.add("D_w S symmetric", dev, tol_alg);
  }
  // Sticky family commutes across lambda.
  {
    const ProcessParams p = make_sticky({0.3, 0.7}, 0.9);
    double dev = 0.0;
    for (auto [l1, l2] : {std::pair{0.3, 1.0}, {1.0, 4.0}, {0.3, 4.0}}) {
      const Mat a = process_smatrix(p, l1), b = process_smatrix(p, l2);
      dev = std::max(dev, (a * b).max_abs_diff(b * a));
    }
    c.add("sticky family commutes", dev, tol_alg);
  }
  // Nothing reflects in the absorbed regime.
  c.add("absorbed S = -I",
        process_smatrix(make_absorbed(3, 0.5), 0.7)
            .max_abs_diff(Mat::identity(3).scaled(-1.0)),
        tol_alg);
  // Parameter limits: the combined regime degenerates continuously.
  {
    const Mat lim_el = process_smatrix(make_general({0.6, 0.4}, 0.4, 1e-12), 2.0);
    c.add("general -> elastic limit",
          lim_el.max_abs_diff(process_smatrix(make_elastic({0.6, 0.4}, 0.4), 2.0)),
          tol_lim);
    const Mat lim_st = process_smatrix(make_general({0.6, 0.4}, 1e-12, 0.6), 2.0);
    c.add("general -> sticky limit",
          lim_st.max_abs_diff(process_smatrix(make_sticky({0.6, 0.4}, 0.6), 2.0)),
          tol_lim);
    c.add("elastic beta -> 0 is walsh",
          process_smatrix(make_elastic({0.6, 0.4}, 1e-12), 2.0)
              .max_abs_diff(process_smatrix(make_walsh({0.6, 0.4}), 2.0)),
          tol_lim);
  }
  // On-shell round trip: the pencil built at lambda reproduces the
  // scattering matrix at E = -2 lambda, for every regime.
  {
    double dev = 0.0;
    for (const ProcessParams& p :
         {make_walsh({0.5, 0.3, 0.2}), make_elastic({0.6, 0.4}, 0.8),
          make_sticky({0.5, 0.5}, 0.7), make_general({0.6, 0.4}, 0.4, 0.6),
          make_absorbed(2, 0.5)}) {
      for (double lambda : {0.3, 1.0, 2.5}) {
        const Mat s = onshell(boundary_matrices(p, lambda), -2.0 * lambda);
        dev = std::max(dev, s.max_abs_diff(process_smatrix(p, lambda)));
      }
    }
    c.add("on-shell round trip", dev, tol_lim);
  }
  // Walsh / elastic pencils are energy-independent: one pencil serves all
  // lambda, and the Walsh pencil even serves positive energies.
  {
    const ProcessParams pw = make_walsh({0.5, 0.5});
    const BoundaryMatrices ab = boundary_matrices(pw, 1.0);
    double dev = 0.0;
    for (double lambda : {0.3, 2.5})
      dev = std::max(dev, onshell(ab, -2.0 * lambda)
                              .max_abs_diff(process_smatrix(pw, lambda)));
    Mat flip(2, 2);
    flip(0, 1) = flip(1, 0) = 1.0;
    dev = std::max(dev, onshell(ab, 3.0).max_abs_diff(flip));
    c.add("walsh pencil energy-independent", dev, tol_alg);

    const ProcessParams pel = make_elastic({0.6, 0.4}, 0.8);
    const BoundaryMatrices abe = boundary_matrices(pel, 1.0);
    double deve = 0.0;
    for (double lambda : {0.3, 2.5})
      deve = std::max(deve, onshell(abe, -2.0 * lambda)
                                .max_abs_diff(process_smatrix(pel, lambda)));
    c.add("elastic pencil energy-independent", deve, tol_lim);
  }
  // The pencil is only defined up to left multiplication by an invertible
  // matrix.
  {
    const ProcessParams p = make_sticky({0.5, 0.5}, 1.0);
    BoundaryMatrices ab = boundary_matrices(p, 1.0);
    Mat cmat(2, 2);
    cmat(0, 0) = 1.2;
    cmat(0, 1) = 0.3;
    cmat(1, 0) = -0.4;
    cmat(1, 1) = 2.0;
    BoundaryMatrices scaled{cmat * ab.A, cmat * ab.B, ab.lambda0};
    c.add("pencil left-scaling invariance",
          onshell(scaled, -2.0).max_abs_diff(onshell(ab, -2.0)), tol_lim);
  }
  bool throws_on_zero = false;
  try {
    onshell(boundary_matrices(make_walsh({1.0}), 1.0), 0.0);
  } catch (const std::invalid_argument&) {
    throws_on_zero = true;
  }
  c.require("on-shell rejects E = 0", throws_on_zero);
  return c.report();
}

TestReport criterion_laplace() {
  // Each of the four vertex kernels (first-hitting density, g_{beta,0},
  // g_{0,gamma}, g_{beta,gamma}) is exercised on a 3x3 (lambda, x) grid by
  // choosing one process per kernel; AbsorbedKilled re-checks g_{beta,0} at
  // a second beta.
  Collector c("laplace-consistency");
  const std::vector<double> lambdas{0.5, 1.0, 2.5};
  const std::vector<double> xs{0.25, 0.7, 1.6};
  fold(c, laplace_consistency(make_walsh({0.6, 0.4}), lambdas, xs));
  fold(c, laplace_consistency(make_elastic({0.6, 0.4}, 0.8), lambdas, xs));
  fold(c, laplace_consistency(make_sticky({0.5, 0.5}, 0.7), lambdas, xs));
  fold(c, laplace_consistency(make_general({0.6, 0.4}, 0.4, 0.6), lambdas,
                              xs));
  fold(c, laplace_consistency(make_absorbed(2, 0.5), lambdas, xs));
  return c.report();
}

TestReport criterion_mass() {
  Collector c("kernel-mass");
  const GraphPoint src = GraphPoint::on_edge(1, 0.3);
  const std::vector<double> times{0.25, 1.0, 4.0};
  fold(c, mass_check(make_walsh({0.6, 0.4}), src, times));
  fold(c, mass_check(make_sticky({0.5, 0.5}, 0.7), src, times));
  fold(c, mass_check(make_elastic({0.6, 0.4}, 0.8), src, times));
  fold(c, mass_check(make_general({0.6, 0.4}, 0.4, 0.6), src, times));
  fold(c, mass_check(make_absorbed(2, 0.5), src, times));
  // From the vertex the sticky kernel must still carry full mass (atom
  // included).
  fold(c, mass_check(make_sticky({0.5, 0.5}, 0.7), GraphPoint::vertex(),
                     {0.5, 2.0}));
  return c.report();
}

TestReport criterion_chapman_kolmogorov() {
  Collector c("chapman-kolmogorov");
  const GraphPoint src = GraphPoint::on_edge(1, 0.3);
  const std::vector<GraphPoint> tgts{
      GraphPoint::on_edge(1, 0.05), GraphPoint::on_edge(1, 0.1),
      GraphPoint::on_edge(1, 0.5),  GraphPoint::on_edge(1, 1.2),
      GraphPoint::on_edge(1, 2.5),  GraphPoint::on_edge(2, 0.05),
      GraphPoint::on_edge(2, 0.2),  GraphPoint::on_edge(2, 0.7),
      GraphPoint::on_edge(2, 1.5),  GraphPoint::on_edge(2, 3.0)};
  fold(c, chapman_kolmogorov(make_walsh({0.6, 0.4}), src, 0.5, 0.5, tgts));
  fold(c, chapman_kolmogorov(make_walsh({0.6, 0.4}), src, 0.5, 0.5, tgts,
                             1e-6, /*dirichlet=*/true));
  return c.report();
}

TestReport criterion_boundary_residual() {
  Collector c("boundary-residual");
  const double lambda = 0.8;
  fold(c, generator_domain_check(make_walsh({0.5, 0.3, 0.2}), lambda));
  fold(c, generator_domain_check(make_elastic({0.6, 0.4}, 0.8), lambda));
  fold(c, generator_domain_check(make_sticky({0.5, 0.5}, 0.7), lambda));
  fold(c, generator_domain_check(make_general({0.6, 0.4}, 0.4, 0.6), lambda));
  fold(c, generator_domain_check(make_absorbed(2, 2.0 / 3.0), lambda));
  return c.report();
}

TestReport criterion_spectral() {
  Collector c("sticky-spectral");
  const double gamma = 0.7;
  const ProcessParams p = make_sticky({0.4, 0.35, 0.25}, gamma);
  const StickySpectral sp = sticky_spectral(p);

  c.add("bound-state energy -4/gamma^2",
        std::abs(sp.energy + 4.0 / (gamma * gamma)), 1e-14);
  c.add("decay rate 2/gamma", std::abs(sp.decay_rate - 2.0 / gamma), 1e-14);
  {
    const StickySpectral s2 = sticky_spectral(make_sticky({1.0}, 2.0));
    c.add("gamma=2 energy exactly -1", std::abs(s2.energy + 1.0), 1e-15);
  }
  // Unit L2 norm across all edges, by quadrature.
  {
    QuadratureConfig qc;
    qc.abs_tol = 1e-13;
    const double per_edge =
        integrate_halfline([&](double x) { return sp.psi(x) * sp.psi(x); },
                           0.0, qc)
            .value;
    c.add("bound-state norm", std::abs(sp.n_edges * per_edge - 1.0), 1e-10);
  }
  // Reflection phase: continuous, in (-pi, 0), derivative consistent with
  // the closed-form time delay.
  {
    double prev = 0.0;
    bool in_range = true, decreasing = true;
    bool first = true;
    for (double k : {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
      const double d = reflection_phase(p, k);
      in_range = in_range && d > -M_PI && d < 0.0;
      if (!first) decreasing = decreasing && d < prev;
      prev = d;
      first = false;
    }
    c.require("phase in (-pi, 0)", in_range);
    c.require("phase decreasing in k", decreasing);

    double worst = 0.0;
    for (double k : {0.3, 1.0, 2.0, 10.0}) {
      const double h = 1e-4 * k;
      const double fd = (reflection_phase(p, k + h) -
                         reflection_phase(p, k - h)) /
                        (2.0 * h) / (2.0 * k);
      const double closed = time_delay_eigenvalue(p, k);
      worst = std::max(worst, std::abs(fd - closed) / std::abs(closed));
    }
    c.add("time delay vs phase derivative (rel)", worst, 1e-6);

    const double t_big = time_delay_eigenvalue(p, 1e6);
    c.require("time delay -> 0- as k -> inf",
              t_big < 0.0 && t_big > -1e-12);
    c.require("time delay -> -inf as k -> 0+",
              time_delay_eigenvalue(p, 1e-6) < -1e5);
  }
  return c.report();
}

}  // namespace verify_detail

std::vector<TestReport> run_primary_suite(const SuiteOptions& opts) {
  using namespace verify_detail;
  std::vector<TestReport> out;
  const auto timed = [&](TestReport (*fn)()) {
    const auto t0 = std::chrono::steady_clock::now();
    TestReport r = fn();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::ostringstream os;
    os << r.details << (r.details.empty() ? "" : "; ") << "[" << secs << "s]";
    r.details = os.str();
    out.push_back(std::move(r));
  };
  const auto timed_mc = [&](TestReport (*fn)(const SuiteOptions&)) {
    const auto t0 = std::chrono::steady_clock::now();
    TestReport r = fn(opts);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::ostringstream os;
    os << r.details << (r.details.empty() ? "" : "; ") << "[" << secs << "s]";
    r.details = os.str();
    out.push_back(std::move(r));
  };

  timed(&criterion_classification);
  timed(&criterion_scattering_algebra);
  timed(&criterion_laplace);
  timed(&criterion_mass);
  timed(&criterion_chapman_kolmogorov);
  timed(&criterion_boundary_residual);
  timed_mc(&criterion_exact_samplers);
  timed_mc(&criterion_simulated_marginals);
  timed_mc(&criterion_exit_lifetime);
  timed_mc(&criterion_localtime_potentials);
  timed(&criterion_spectral);
  return out;
}

}  // namespace starwalk
