#include "sfi/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>

#include "sfi/errors.hpp"
#include "sfi/fourier.hpp"
#include "sfi/griditer.hpp"
#include "sfi/numerics.hpp"

namespace sfi {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

/// Per-axis phase e^{-i k_j (c - L)} linking the FFT to the continuum
/// transform on [c - L, c + L).
std::vector<std::complex<double>> axis_phase(const GridSpec& g, int axis, bool fwd) {
  std::vector<std::complex<double>> ph(g.n);
  const double off = g.center[axis] - g.L_box;
  for (int j = 0; j < g.n; ++j) {
    const double a = -g.k(j) * off;
    ph[j] = std::polar(1.0, fwd ? a : -a);
  }
  return ph;
}

}  // namespace

double Wavefunction::norm2() const {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return s * measure();
}

Wavefunction Wavefunction::zero(const GridSpec& g, Repr r) {
  g.validate();
  Wavefunction w;
  w.grid = g;
  w.repr = r;
  w.v.assign(g.size(), {0.0, 0.0});
  return w;
}

Wavefunction to_momentum(const Wavefunction& psi) {
  if (psi.repr != Repr::position) {
    throw invalid_argument("to_momentum: state already in momentum representation");
  }
  Wavefunction out = psi;
  dft_forward(out.grid.dim, out.grid.n, out.v.data());
  const GridSpec& g = out.grid;
  double scale = 1.0;
  for (int d = 0; d < g.dim; ++d) scale *= g.h() / std::sqrt(kTwoPi);
  std::vector<std::vector<std::complex<double>>> ph;
  for (int d = 0; d < g.dim; ++d) ph.push_back(axis_phase(g, d, true));
  for_each_point(g, [&](std::size_t flat, const int idx[3]) {
    std::complex<double> p = scale;
    for (int d = 0; d < g.dim; ++d) p *= ph[d][idx[d]];
    out.v[flat] *= p;
  });
  out.repr = Repr::momentum;
  return out;
}

Wavefunction to_position(const Wavefunction& psi) {
  if (psi.repr != Repr::momentum) {
    throw invalid_argument("to_position: state already in position representation");
  }
  Wavefunction out = psi;
  const GridSpec& g = out.grid;
  double scale = 1.0;
  for (int d = 0; d < g.dim; ++d) scale *= g.dk() / std::sqrt(kTwoPi);
  std::vector<std::vector<std::complex<double>>> ph;
  for (int d = 0; d < g.dim; ++d) ph.push_back(axis_phase(g, d, false));
  for_each_point(g, [&](std::size_t flat, const int idx[3]) {
    std::complex<double> p = scale;
    for (int d = 0; d < g.dim; ++d) p *= ph[d][idx[d]];
    out.v[flat] *= p;
  });
  dft_backward(out.grid.dim, out.grid.n, out.v.data());
  out.repr = Repr::position;
  return out;
}

std::complex<double> inner_product(const Wavefunction& a, const Wavefunction& b) {
  if (!(a.grid == b.grid) || a.repr != b.repr) {
    throw invalid_argument("inner_product: mismatched grids or representations");
  }
  std::complex<double> s{0.0, 0.0};
  for (std::size_t i = 0; i < a.v.size(); ++i) s += std::conj(a.v[i]) * b.v[i];
  return s * a.measure();
}

void normalize(Wavefunction& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw invalid_argument("normalize: zero field");
  const double inv = 1.0 / n;
  for (auto& c : psi.v) c *= inv;
}

Vec3 centroid(const Wavefunction& psi) {
  if (psi.repr != Repr::position) throw invalid_argument("centroid: need position repr");
  Vec3 m{};
  double w = 0.0;
  for_each_point(psi.grid, [&](std::size_t flat, const int idx[3]) {
    const double p = std::norm(psi.v[flat]);
    m += p * grid_point_x(psi.grid, idx);
    w += p;
  });
  if (w == 0.0) throw invalid_argument("centroid: zero field");
  return m * (1.0 / w);
}

double second_moment(const Wavefunction& psi) {
  if (psi.repr != Repr::position) {
    throw invalid_argument("second_moment: need position repr");
  }
  double s = 0.0;
  for_each_point(psi.grid, [&](std::size_t flat, const int idx[3]) {
    const Vec3 x = grid_point_x(psi.grid, idx);
    s += std::norm(psi.v[flat]) * x.dot(x);
  });
  return s * psi.measure();
}

Vec3 momentum_mean(const Wavefunction& psi) {
  const Wavefunction* p = &psi;
  Wavefunction tmp;
  if (psi.repr == Repr::position) {
    tmp = to_momentum(psi);
    p = &tmp;
  }
  Vec3 m{};
  double w = 0.0;
  for_each_point(p->grid, [&](std::size_t flat, const int idx[3]) {
    const double a = std::norm(p->v[flat]);
    m += a * grid_point_k(p->grid, idx);
    w += a;
  });
  if (w == 0.0) throw invalid_argument("momentum_mean: zero field");
  return m * (1.0 / w);
}

Vec3 momentum_variance(const Wavefunction& psi) {
  const Wavefunction* p = &psi;
  Wavefunction tmp;
  if (psi.repr == Repr::position) {
    tmp = to_momentum(psi);
    p = &tmp;
  }
  const Vec3 mean = momentum_mean(*p);
  Vec3 var{};
  double w = 0.0;
  for_each_point(p->grid, [&](std::size_t flat, const int idx[3]) {
    const double a = std::norm(p->v[flat]);
    const Vec3 k = grid_point_k(p->grid, idx) - mean;
    var += a * Vec3{k.x * k.x, k.y * k.y, k.z * k.z};
    w += a;
  });
  return var * (1.0 / w);
}

namespace {

double kinetic_expectation(const Wavefunction& psi) {
  const Wavefunction ph = psi.repr == Repr::momentum ? psi : to_momentum(psi);
  double s = 0.0;
  for_each_point(ph.grid, [&](std::size_t flat, const int idx[3]) {
    const Vec3 k = grid_point_k(ph.grid, idx);
    s += std::norm(ph.v[flat]) * k.dot(k);
  });
  return s * ph.measure();
}

std::vector<double> sample_potential(const GridSpec& g, const PotentialSpec& pot) {
  std::vector<double> V(g.size());
  for_each_point(g, [&](std::size_t flat, const int idx[3]) {
    V[flat] = potential_eval(pot, grid_point_x(g, idx));
  });
  return V;
}

}  // namespace

double expectation_energy(const Wavefunction& psi, const PotentialSpec& pot) {
  if (psi.repr != Repr::position) {
    throw invalid_argument("expectation_energy: need position repr");
  }
  const std::vector<double> V = sample_potential(psi.grid, pot);
  double e = 0.0;
  for (std::size_t i = 0; i < psi.v.size(); ++i) e += std::norm(psi.v[i]) * V[i];
  return e * psi.measure() + kinetic_expectation(psi);
}

Wavefunction hydrogenic_ground_state(const GridSpec& grid, double Z, double soft_a,
                                     RelaxInfo* info) {
  grid.validate();
  if (!(Z > 0.0)) throw invalid_argument("hydrogenic_ground_state: Z must be > 0");

  Wavefunction psi = Wavefunction::zero(grid);
  for_each_point(grid, [&](std::size_t flat, const int idx[3]) {
    const Vec3 x = grid_point_x(grid, idx) - grid.center;
    psi.v[flat] = std::exp(-0.5 * Z * x.norm());
  });
  normalize(psi);

  // Tail containment: mass beyond 0.9 L_box must be negligible.
  double tail = 0.0;
  for_each_point(grid, [&](std::size_t flat, const int idx[3]) {
    const Vec3 x = grid_point_x(grid, idx) - grid.center;
    if (x.norm() >= 0.9 * grid.L_box) tail += std::norm(psi.v[flat]);
  });
  tail *= psi.measure();
  if (tail > 1e-6) {
    throw invalid_argument("hydrogenic_ground_state: grid too small, tail mass " +
                           std::to_string(tail));
  }

  if (soft_a <= 0.0) {
    if (info) {
      info->iterations = 0;
      PotentialSpec bare{PotentialKind::coulomb, 1.0, 1.0, 1.0, Z,
                         grid.h() * 1e-6};
      info->energy = expectation_energy(psi, bare);
    }
    return psi;
  }

  // Imaginary-time relaxation with Strang splitting, dt = 0.1 h^2.
  PotentialSpec pot{PotentialKind::coulomb, 1.0, 1.0, 1.0, Z, soft_a};
  const std::vector<double> V = sample_potential(grid, pot);
  const double dt = 0.1 * grid.h() * grid.h();
  std::vector<double> half_pos(V.size()), kin(grid.size());
  for (std::size_t i = 0; i < V.size(); ++i) half_pos[i] = std::exp(-0.5 * dt * V[i]);
  for_each_point(grid, [&](std::size_t flat, const int idx[3]) {
    const Vec3 k = grid_point_k(grid, idx);
    kin[flat] = std::exp(-dt * k.dot(k));
  });

  const std::uint64_t max_iter = 500000;
  const double norm_fix = 1.0 / double(grid.size());
  double e_prev = expectation_energy(psi, pot);
  if (info) info->energy_history.push_back(e_prev);
  std::uint64_t it = 0;
  for (; it < max_iter; ++it) {
    for (std::size_t i = 0; i < psi.v.size(); ++i) psi.v[i] *= half_pos[i];
    dft_forward(grid.dim, grid.n, psi.v.data());
    for (std::size_t i = 0; i < psi.v.size(); ++i) psi.v[i] *= kin[i];
    dft_backward(grid.dim, grid.n, psi.v.data());
    for (std::size_t i = 0; i < psi.v.size(); ++i) psi.v[i] *= half_pos[i] * norm_fix;
    normalize(psi);
    const double e = expectation_energy(psi, pot);
    if (info) info->energy_history.push_back(e);
    if (std::abs(e - e_prev) < 1e-10) {
      e_prev = e;
      break;
    }
    e_prev = e;
  }
  if (it == max_iter) {
    throw numerical_abort("hydrogenic_ground_state: relaxation did not converge");
  }
  if (info) {
    info->iterations = it + 1;
    info->energy = e_prev;
  }
  return psi;
}

Wavefunction gaussian_state(const GridSpec& grid, double R) {
  grid.validate();
  if (!(R > 0.0)) throw invalid_argument("gaussian_state: R must be > 0");
  Wavefunction psi = Wavefunction::zero(grid);
  for_each_point(grid, [&](std::size_t flat, const int idx[3]) {
    const Vec3 x = grid_point_x(grid, idx) - grid.center;
    psi.v[flat] = std::exp(-x.dot(x) / (2.0 * R * R));
  });
  normalize(psi);
  return psi;
}

Wavefunction random_state(const GridSpec& grid, std::uint64_t seed) {
  grid.validate();
  std::mt19937_64 rng(seed);
  auto uniform = [&]() {
    return (double(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  };
  Wavefunction psi = Wavefunction::zero(grid);
  for (auto& c : psi.v) {
    const double u1 = uniform(), u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    c = {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
  }
  normalize(psi);
  return psi;
}

DecayReport check_decay(const Wavefunction& psi) {
  if (psi.repr != Repr::position) throw invalid_argument("check_decay: need position repr");
  if (psi.norm2() == 0.0) throw invalid_argument("check_decay: zero field");
  const GridSpec& g = psi.grid;

  double amax = 0.0;
  for (const auto& c : psi.v) amax = std::max(amax, std::abs(c));

  // Radial-bin fit of log|psi| against r over the outer half of the box;
  // bins below the roundoff floor are excluded.
  const double r_lo = 0.5 * g.L_box, r_hi = 0.95 * g.L_box;
  const double floor_x = 1e-14 * amax;
  const int nbins = 64;
  std::vector<double> sum(nbins, 0.0), cnt(nbins, 0.0);
  for_each_point(g, [&](std::size_t flat, const int idx[3]) {
    const Vec3 x = grid_point_x(g, idx) - g.center;
    const double r = x.norm();
    if (r < r_lo || r > r_hi) return;
    const double a = std::abs(psi.v[flat]);
    if (a < floor_x) return;
    const int b = std::min(nbins - 1, int((r - r_lo) / (r_hi - r_lo) * nbins));
    sum[b] += std::log(a);
    cnt[b] += 1.0;
  });
  std::vector<double> rs, ls;
  for (int b = 0; b < nbins; ++b) {
    if (cnt[b] > 0.0) {
      rs.push_back(r_lo + (b + 0.5) * (r_hi - r_lo) / nbins);
      ls.push_back(sum[b] / cnt[b]);
    }
  }
  DecayReport rep;
  if (rs.size() >= 2) {
    const LinearFit fit = linear_fit(rs, ls);
    rep.R_fit = fit.slope < 0.0 ? -1.0 / fit.slope : 0.0;
    if (rep.R_fit > 0.0) {
      rep.C_fit = std::exp(fit.intercept) * std::pow(rep.R_fit, 1.5);
    }
  }

  // Momentum power-law fit over a band below the grid Nyquist momentum.
  const Wavefunction ph = to_momentum(psi);
  double pmax_amp = 0.0;
  for (const auto& c : ph.v) pmax_amp = std::max(pmax_amp, std::abs(c));
  const double floor_p = 1e-14 * pmax_amp;
  const double p_nyq = M_PI / g.h();
  const double p1 = p_nyq / 8.0, p2 = p_nyq / 2.5;
  const int pbins = 48;
  std::vector<double> psum(pbins, 0.0), pcnt(pbins, 0.0);
  const double lp1 = std::log(p1), lp2 = std::log(p2);
  for_each_point(g, [&](std::size_t flat, const int idx[3]) {
    const Vec3 k = grid_point_k(g, idx);
    const double p = k.norm();
    if (p < p1 || p > p2) return;
    const double a = std::abs(ph.v[flat]);
    if (a < floor_p) return;
    const int b = std::min(pbins - 1, int((std::log(p) - lp1) / (lp2 - lp1) * pbins));
    psum[b] += std::log(a);
    pcnt[b] += 1.0;
  });
  std::vector<double> lps, las;
  for (int b = 0; b < pbins; ++b) {
    if (pcnt[b] > 0.0) {
      lps.push_back(lp1 + (b + 0.5) * (lp2 - lp1) / pbins);
      las.push_back(psum[b] / pcnt[b]);
    }
  }
  if (lps.size() >= 4) {
    rep.gamma_fit = -linear_fit(lps, las).slope;
    const std::size_t half = lps.size() / 2;
    std::vector<double> x_lo(lps.begin(), lps.begin() + half);
    std::vector<double> y_lo(las.begin(), las.begin() + half);
    std::vector<double> x_hi(lps.begin() + half, lps.end());
    std::vector<double> y_hi(las.begin() + half, las.end());
    rep.gamma_lo = -linear_fit(x_lo, y_lo).slope;
    rep.gamma_hi = -linear_fit(x_hi, y_hi).slope;
    rep.super_polynomial = rep.gamma_hi > 1.5 * rep.gamma_lo + 1.0;
  }
  rep.sr_gamma_ok = rep.super_polynomial || rep.gamma_fit > 2.5;
  rep.cou_gamma4_compatible =
      !rep.super_polynomial && std::abs(rep.gamma_fit - 4.0) <= 0.15 * 4.0;
  return rep;
}

void write_wavefunction(const Wavefunction& psi, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw config_error("cannot open " + path + " for writing");
  const char magic[8] = {'S', 'F', 'I', 'W', 'A', 'V', 'E', '1'};
  std::fwrite(magic, 1, 8, fp);
  const std::uint32_t dim = std::uint32_t(psi.grid.dim), n = std::uint32_t(psi.grid.n);
  std::fwrite(&dim, 4, 1, fp);
  std::fwrite(&n, 4, 1, fp);
  std::fwrite(&psi.grid.L_box, 8, 1, fp);
  const double c[3] = {psi.grid.center.x, psi.grid.center.y, psi.grid.center.z};
  std::fwrite(c, 8, 3, fp);
  const std::uint8_t repr = psi.repr == Repr::position ? 0 : 1;
  const std::uint8_t pad[7] = {};
  std::fwrite(&repr, 1, 1, fp);
  std::fwrite(pad, 1, 7, fp);
  std::fwrite(psi.v.data(), sizeof(std::complex<double>), psi.v.size(), fp);
  std::fclose(fp);
}

Wavefunction read_wavefunction(const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw config_error("cannot open " + path);
  char magic[8];
  if (std::fread(magic, 1, 8, fp) != 8 || std::memcmp(magic, "SFIWAVE1", 8) != 0) {
    std::fclose(fp);
    throw config_error(path + ": not an SFIWAVE1 snapshot");
  }
  std::uint32_t dim = 0, n = 0;
  double L = 0.0, c[3] = {0, 0, 0};
  std::uint8_t repr = 0, pad[7];
  bool ok = std::fread(&dim, 4, 1, fp) == 1 && std::fread(&n, 4, 1, fp) == 1 &&
            std::fread(&L, 8, 1, fp) == 1 && std::fread(c, 8, 3, fp) == 3 &&
            std::fread(&repr, 1, 1, fp) == 1 && std::fread(pad, 1, 7, fp) == 7;
  if (!ok) {
    std::fclose(fp);
    throw config_error(path + ": truncated header");
  }
  GridSpec g;
  g.dim = int(dim);
  g.n = int(n);
  g.L_box = L;
  g.center = {c[0], c[1], c[2]};
  Wavefunction psi = Wavefunction::zero(g, repr == 0 ? Repr::position : Repr::momentum);
  ok = std::fread(psi.v.data(), sizeof(std::complex<double>), psi.v.size(), fp) ==
       psi.v.size();
  std::fclose(fp);
  if (!ok) throw config_error(path + ": truncated payload");
  return psi;
}

void write_slice_csv(const Wavefunction& psi, int axis, const std::string& path) {
  if (axis < 0 || axis >= psi.grid.dim) throw invalid_argument("write_slice_csv: bad axis");
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw config_error("cannot open " + path + " for writing");
  std::fprintf(fp, "x,re,im,abs2\n");
  const GridSpec& g = psi.grid;
  // stride of the chosen axis in the row-major layout
  std::size_t stride = 1;
  for (int d = g.dim - 1; d > axis; --d) stride *= std::size_t(g.n);
  // all other axes pinned at n/2
  std::size_t base = 0;
  std::size_t s = 1;
  for (int d = g.dim - 1; d >= 0; --d) {
    if (d != axis) base += std::size_t(g.n / 2) * s;
    s *= std::size_t(g.n);
  }
  for (int i = 0; i < g.n; ++i) {
    const auto c = psi.v[base + std::size_t(i) * stride];
    std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g\n", g.x(axis, i), c.real(), c.imag(),
                 std::norm(c));
  }
  std::fclose(fp);
}

}  // namespace sfi
