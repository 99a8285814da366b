#include "trajquad/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace trajquad::num {

namespace {

constexpr std::array<double, 8> kXk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                       0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                       0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                       0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                       0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                       0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                       0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

void gk15(const std::function<double(double)>& f, double a, double b, double& result, double& err) {
  double c = 0.5 * (a + b), hl = 0.5 * (b - a);
  double fc = f(c);
  double k = fc * kWk[7], g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    double dx = hl * kXk[static_cast<std::size_t>(j)];
    double s = f(c - dx) + f(c + dx);
    k += kWk[static_cast<std::size_t>(j)] * s;
    if (j % 2 == 1) g += kWg[static_cast<std::size_t>(j / 2)] * s;
  }
  result = k * hl;
  err = std::abs((k - g) * hl);
}

double gk_adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth) {
  double r, e;
  gk15(f, a, b, r, e);
  if (e <= tol || e <= 50 * std::numeric_limits<double>::epsilon() * std::abs(r) || depth <= 0) return r;
  double m = 0.5 * (a + b);
  return gk_adapt(f, a, m, 0.5 * tol, depth - 1) + gk_adapt(f, m, b, 0.5 * tol, depth - 1);
}

constexpr std::array<double, 8> kGl8x = {-0.960289856497536231683560868569473, -0.796666477413626739591553936475830,
                                         -0.525532409916328985817739049189246, -0.183434642495649804939476142360184,
                                         0.183434642495649804939476142360184,  0.525532409916328985817739049189246,
                                         0.796666477413626739591553936475830,  0.960289856497536231683560868569473};
constexpr std::array<double, 8> kGl8w = {0.101228536290376259152531354309962, 0.222381034453374470544355994426241,
                                         0.313706645877887287337962201986601, 0.362683783378361982965150449277195,
                                         0.362683783378361982965150449277195, 0.313706645877887287337962201986601,
                                         0.222381034453374470544355994426241, 0.101228536290376259152531354309962};

// Weights w_j with sum_j w_j f(j) = integral over [a, a+1] of the interpolant
// through integer nodes 0..width-1.
const std::vector<double>& interval_weights(int width, int a) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(width, a);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<double> w(static_cast<std::size_t>(width), 0.0);
  for (std::size_t q = 0; q < kGl8x.size(); ++q) {
    double t = a + 0.5 * (kGl8x[q] + 1.0);
    for (int j = 0; j < width; ++j) {
      double l = 1.0;
      for (int k = 0; k < width; ++k)
        if (k != j) l *= (t - k) / static_cast<double>(j - k);
      w[static_cast<std::size_t>(j)] += 0.5 * kGl8w[q] * l;
    }
  }
  return cache.emplace(key, std::move(w)).first->second;
}

std::size_t stencil_start(std::size_t i, std::size_t n, int width, int left) {
  long s = static_cast<long>(i) - left;
  s = std::clamp(s, 0L, static_cast<long>(n) - width);
  return static_cast<std::size_t>(s);
}

}  // namespace

double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  return gk_adapt(f, a, b, abs_tol, max_depth);
}

std::vector<double> fd_weights(double z, std::span<const double> xs, int m) {
  const std::size_t n = xs.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
  double c1 = 1.0, c4 = xs[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t mn = std::min<std::size_t>(i, static_cast<std::size_t>(m));
    double c2 = 1.0, c5 = c4;
    c4 = xs[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = c[i][static_cast<std::size_t>(m)];
  return out;
}

std::vector<double> derivative(std::span<const double> f, double h, int m, int width) {
  const std::size_t n = f.size();
  if (n < static_cast<std::size_t>(width)) throw std::invalid_argument("derivative: grid shorter than stencil");
  std::vector<double> out(n);
  std::map<long, std::vector<double>> weights;
  const int left = width / 2;
  const double scale = std::pow(h, -m);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t s = stencil_start(i, n, width, left);
    long off = static_cast<long>(i) - static_cast<long>(s);
    auto it = weights.find(off);
    if (it == weights.end()) {
      std::vector<double> xs(static_cast<std::size_t>(width));
      for (int j = 0; j < width; ++j) xs[static_cast<std::size_t>(j)] = j;
      it = weights.emplace(off, fd_weights(static_cast<double>(off), xs, m)).first;
    }
    double acc = 0.0;
    for (int j = 0; j < width; ++j) acc += it->second[static_cast<std::size_t>(j)] * f[s + static_cast<std::size_t>(j)];
    out[i] = acc * scale;
  }
  return out;
}

std::vector<double> cumulative_integral(std::span<const double> f, double h, std::size_t anchor, int width) {
  const std::size_t n = f.size();
  if (n < static_cast<std::size_t>(width)) throw std::invalid_argument("cumulative_integral: grid too short");
  std::vector<double> panel(n - 1);
  const int left = width / 2 - 1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t s = stencil_start(i, n, width, left);
    const auto& w = interval_weights(width, static_cast<int>(i - s));
    double acc = 0.0;
    for (int j = 0; j < width; ++j) acc += w[static_cast<std::size_t>(j)] * f[s + static_cast<std::size_t>(j)];
    panel[i] = acc * h;
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t i = anchor + 1; i < n; ++i) out[i] = out[i - 1] + panel[i - 1];
  for (std::size_t i = anchor; i-- > 0;) out[i] = out[i + 1] - panel[i];
  return out;
}

double integrate(std::span<const double> f, double h, int width) {
  return cumulative_integral(f, h, 0, width).back();
}

double neville(std::span<const double> xs, std::span<const double> ys, double x) {
  std::vector<double> p(ys.begin(), ys.end());
  const std::size_t n = p.size();
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 0; i + k < n; ++i)
      p[i] = ((x - xs[i + k]) * p[i] + (xs[i] - x) * p[i + 1]) / (xs[i] - xs[i + k]);
  return p[0];
}

std::vector<double> polyfit(std::span<const double> xs, std::span<const double> ys, int degree) {
  const std::size_t m = xs.size(), n = static_cast<std::size_t>(degree) + 1;
  if (m < n) throw std::invalid_argument("polyfit: too few points");
  double scale = 0.0;
  for (double x : xs) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) scale = 1.0;
  // Householder QR of the scaled Vandermonde matrix.
  std::vector<std::vector<double>> a(m, std::vector<double>(n));
  std::vector<double> b(ys.begin(), ys.end());
  for (std::size_t i = 0; i < m; ++i) {
    double t = 1.0, xi = xs[i] / scale;
    for (std::size_t j = 0; j < n; ++j, t *= xi) a[i][j] = t;
  }
  for (std::size_t k = 0; k < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < m; ++i) norm += a[i][k] * a[i][k];
    norm = std::sqrt(norm);
    if (norm == 0.0) throw std::runtime_error("polyfit: singular design");
    double alpha = a[k][k] > 0 ? -norm : norm;
    std::vector<double> v(m, 0.0);
    for (std::size_t i = k; i < m; ++i) v[i] = a[i][k];
    v[k] -= alpha;
    double vv = 0.0;
    for (std::size_t i = k; i < m; ++i) vv += v[i] * v[i];
    if (vv == 0.0) continue;
    for (std::size_t j = k; j < n; ++j) {
      double d = 0.0;
      for (std::size_t i = k; i < m; ++i) d += v[i] * a[i][j];
      d = 2.0 * d / vv;
      for (std::size_t i = k; i < m; ++i) a[i][j] -= d * v[i];
    }
    double d = 0.0;
    for (std::size_t i = k; i < m; ++i) d += v[i] * b[i];
    d = 2.0 * d / vv;
    for (std::size_t i = k; i < m; ++i) b[i] -= d * v[i];
  }
  std::vector<double> c(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * c[j];
    c[k] = s / a[k][k];
  }
  double f = 1.0;
  for (std::size_t j = 0; j < n; ++j, f /= scale) c[j] *= f;
  return c;
}

}  // namespace trajquad::num
