#include "sfi/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "sfi/errors.hpp"
#include "sfi/numerics.hpp"

namespace sfi {

namespace {

double envelope_value(PulseEnvelope e, double s) {
  if (s < 0.0 || s > 1.0) return 0.0;
  switch (e) {
    case PulseEnvelope::sin2: {
      const double u = std::sin(M_PI * s);
      return u * u;
    }
  }
  return 0.0;
}

Vec3 circular_f(const PulseSpec& spec, double s) {
  if (s < 0.0 || s > 1.0) return {};
  const double h = envelope_value(spec.envelope, s);
  const double ph = spec.omega * (s - 0.5);
  return {h * std::cos(ph), h * std::sin(ph), 0.0};
}

/// Local cubic Lagrange interpolation on uniform samples over [0,1].
Vec3 interp_cubic(const std::vector<Vec3>& ys, double s, int n_grid) {
  const double u = s * n_grid;
  int i = int(std::floor(u));
  i = std::clamp(i, 1, n_grid - 2);  // stencil i-1 .. i+2
  const double t = u - i;
  const double c0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double c1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double c2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double c3 = (t + 1.0) * t * (t - 1.0) / 6.0;
  return c0 * ys[i - 1] + c1 * ys[i] + c2 * ys[i + 1] + c3 * ys[i + 2];
}

Vec3 sampled_f(const PulseSpec& spec, double s) {
  if (spec.sample_s.empty()) return {};
  if (s < spec.sample_s.front() || s > spec.sample_s.back()) return {};
  // piecewise-linear in the raw samples; the smooth tables are built on
  // the uniform grid downstream
  const auto it = std::upper_bound(spec.sample_s.begin(), spec.sample_s.end(), s);
  const std::size_t j = std::min<std::size_t>(
      spec.sample_s.size() - 1, std::size_t(it - spec.sample_s.begin()));
  if (j == 0) return spec.sample_f.front();
  const double s0 = spec.sample_s[j - 1], s1 = spec.sample_s[j];
  const double w = s1 > s0 ? (s - s0) / (s1 - s0) : 0.0;
  return (1.0 - w) * spec.sample_f[j - 1] + w * spec.sample_f[j];
}

Vec3 raw_f(const PulseSpec& spec, double s) {
  switch (spec.family) {
    case PulseFamily::linear:
      return (s >= 0.0 && s <= 1.0) ? spec.epsilon : Vec3{};
    case PulseFamily::circular_modulated:
      return circular_f(spec, s);
    case PulseFamily::custom_sampled:
      return sampled_f(spec, s);
  }
  return {};
}

void validate_spec(const PulseSpec& spec) {
  if (!(spec.lambda >= 0.0) || !(spec.T > 0.0)) {
    throw invalid_argument("pulse: need lambda >= 0 and T > 0");
  }
  if (spec.family == PulseFamily::custom_sampled) {
    if (spec.sample_s.size() != spec.sample_f.size() || spec.sample_s.size() < 2) {
      throw invalid_argument("pulse: custom_sampled needs matching s/f samples");
    }
    if (!std::is_sorted(spec.sample_s.begin(), spec.sample_s.end())) {
      throw invalid_argument("pulse: custom samples must be ascending in s");
    }
    if (spec.sample_s.front() < 0.0 || spec.sample_s.back() > 1.0) {
      throw invalid_argument("pulse: profile support must lie in [0,1]");
    }
  }
}

}  // namespace

Vec3 PulseTables::f_at(double s) const {
  if (s < 0.0 || s > 1.0) return {};
  if (closed_form) return spec.epsilon;
  return interp_cubic(f_nodes, s, n_grid);
}

Vec3 PulseTables::F_at(double s) const {
  if (s <= 0.0) return {};
  if (s >= 1.0) return F1;
  if (closed_form) return s * spec.epsilon;
  return interp_cubic(F_nodes, s, n_grid);
}

Vec3 PulseTables::G_at(double s) const {
  if (s <= 0.0) return {};
  if (s >= 1.0) return G1 + (s - 1.0) * F1;  // affine tail, exact
  if (closed_form) return (0.5 * s * s) * spec.epsilon;
  return interp_cubic(G_nodes, s, n_grid);
}

PulseTables build_tables(const PulseSpec& spec, const BuildOptions& opt) {
  validate_spec(spec);
  PulseTables t;
  t.spec = spec;
  t.quad_tol = opt.quad_tol;
  t.n_grid = opt.n_grid;
  t.closed_form = spec.family == PulseFamily::linear;

  const int n = t.n_grid;
  t.s_nodes.resize(n + 1);
  t.f_nodes.resize(n + 1);
  t.F_nodes.resize(n + 1);
  t.G_nodes.resize(n + 1);
  const double panel_tol = opt.quad_tol / double(n);

  auto f = [&](double s) { return raw_f(spec, s); };
  for (int i = 0; i <= n; ++i) {
    const double s = double(i) / n;
    t.s_nodes[i] = s;
    t.f_nodes[i] = f(s);
  }

  if (t.closed_form) {
    for (int i = 0; i <= n; ++i) {
      const double s = t.s_nodes[i];
      t.F_nodes[i] = s * spec.epsilon;
      t.G_nodes[i] = (0.5 * s * s) * spec.epsilon;
    }
  } else {
    // F by panel integrals of f; G by the exact Fubini increment
    //   G(b) - G(a) = F(a)(b-a) + int_a^b (b-u) f(u) du,
    // which avoids nested quadrature.
    t.F_nodes[0] = {};
    t.G_nodes[0] = {};
    for (int i = 0; i < n; ++i) {
      const double a = t.s_nodes[i], b = t.s_nodes[i + 1];
      Vec3 dF, wG;
      for (int c = 0; c < 3; ++c) {
        dF[c] = adaptive_simpson([&](double u) { return f(u)[c]; }, a, b, panel_tol);
        wG[c] = adaptive_simpson([&](double u) { return (b - u) * f(u)[c]; }, a, b,
                                 panel_tol);
      }
      t.F_nodes[i + 1] = t.F_nodes[i] + dF;
      t.G_nodes[i + 1] = t.G_nodes[i] + (b - a) * t.F_nodes[i] + wG;
    }
  }

  t.F1 = t.F_nodes[n];
  t.G1 = t.G_nodes[n];

  // Certified (ass2) constant.
  const double nF1 = t.F1.norm(), nG1 = t.G1.norm();
  if (nF1 == 0.0) {
    t.C_ass2 = 0.0;
  } else if (t.F1.dot(t.G1) >= 0.0) {
    t.C_ass2 = std::min(nG1, nF1) / std::sqrt(2.0);
  } else {
    // inf_{s >= 1} |G(1) + (s-1) F(1)| / s over a geometric sample,
    // polished by golden section between the best neighbors.
    auto g = [&](double s) { return (t.G1 + (s - 1.0) * t.F1).norm() / s; };
    const int m = 4096;
    double best_s = 1.0, best = g(1.0);
    for (int i = 1; i <= m; ++i) {
      const double s = std::pow(100.0, double(i) / m);  // geometric on [1, 100]
      const double v = g(s);
      if (v < best) {
        best = v;
        best_s = s;
      }
    }
    const auto gm = golden_section_min(g, best_s / 1.01, std::min(best_s * 1.01, 100.0),
                                       1e-12);
    t.C_ass2 = std::min(best, gm.f);
  }
  return t;
}

Vec3 vector_potential(const PulseTables& tables, double t) {
  return tables.spec.lambda * tables.F_at(t / tables.spec.T);
}

AssumptionCertificate check_assumptions(const PulseTables& tables, double f1_tol) {
  AssumptionCertificate cert;
  cert.F1_norm = tables.F1.norm();
  cert.ass1_pass = cert.F1_norm > f1_tol;
  cert.C_ass2 = tables.C_ass2;
  cert.ass2_method =
      (cert.F1_norm > 0.0 && tables.F1.dot(tables.G1) >= 0.0) ? "closed_form"
                                                              : "inf_search";

  cert.ass0_s0_ladder = {1e-1, 1e-2, 1e-3};
  bool all_finite = true;
  for (double s0 : cert.ass0_s0_ladder) {
    bool finite = true;
    auto integrand = [&](double tau) {
      const double g = tables.G_at(tau).norm();
      if (g < 1e-14) {
        finite = false;
        return 1e15;
      }
      return 1.0 / g;
    };
    double val = adaptive_simpson_geometric(integrand, s0, 1.0, 1e-9);
    if (!finite || !std::isfinite(val) || val > 1e14) {
      val = std::numeric_limits<double>::infinity();
      all_finite = false;
    }
    cert.ass0_integrals.push_back(val);
  }
  cert.ass0_verified_on_samples = all_finite;
  return cert;
}

void write_pulse_csv(const PulseTables& tables, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw config_error("cannot open " + path + " for writing");
  std::fprintf(fp, "s,f_x,f_y,f_z,F_x,F_y,F_z,G_x,G_y,G_z\n");
  for (std::size_t i = 0; i < tables.s_nodes.size(); ++i) {
    const Vec3 f = tables.f_nodes[i], F = tables.F_nodes[i], G = tables.G_nodes[i];
    std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                 tables.s_nodes[i], f.x, f.y, f.z, F.x, F.y, F.z, G.x, G.y, G.z);
  }
  std::fclose(fp);
}

}  // namespace sfi
