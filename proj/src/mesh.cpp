#include "stablelab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stablelab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sphere_surface(int N) {
  // |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2)
  return 2.0 * std::pow(kPi, 0.5 * N) / std::tgamma(0.5 * N);
}

double poly_cell(int p, double a, double b) {
  // integral of r^p over [a, b]
  return (std::pow(b, p + 1) - std::pow(a, p + 1)) / (p + 1);
}

}  // namespace

StretchMap StretchMap::make(int n, double rho) {
  StretchMap sm;
  sm.n = n;
  sm.rho = rho;
  sm.A = static_cast<double>(n) / rho;
  if (std::abs(sm.A - 1.0) < 1e-14) {
    sm.B = 0.0;
    return sm;
  }
  if (sm.A < 1.0)
    throw std::invalid_argument("StretchMap: n/rho < 1 leaves no concave increasing cap profile");
  // Solve (A/sqrt(B)) atan(sqrt(B)) = 1 for B > 0 (decreasing in B).
  double lo = 1e-14, hi = 1.0;
  const auto F = [&](double B) { return sm.A / std::sqrt(B) * std::atan(std::sqrt(B)) - 1.0; };
  while (F(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (F(mid) > 0.0 ? lo : hi) = mid;
  }
  sm.B = 0.5 * (lo + hi);
  return sm;
}

double StretchMap::g(double t) const {
  if (B == 0.0) return A * t;
  return A / std::sqrt(B) * std::atan(std::sqrt(B) * t);
}

double StretchMap::lam(double y) const {
  const double ay = std::abs(y);
  const double sgn = (y >= 0.0) ? 1.0 : -1.0;
  if (ay <= 1.0) return static_cast<double>(n) * y;
  return sgn * (static_cast<double>(n) + rho * g(ay - 1.0));
}

double StretchMap::lamp(double y) const {
  const double ay = std::abs(y);
  if (ay <= 1.0) return static_cast<double>(n);
  return rho * gp(ay - 1.0);
}

double StretchMap::lampp(double y) const {
  const double ay = std::abs(y);
  const double sgn = (y >= 0.0) ? 1.0 : -1.0;
  if (ay <= 1.0) return 0.0;
  return sgn * rho * gpp(ay - 1.0);
}

void Mesh::finalize() {
  interior_ids_.clear();
  boundary_ids_.clear();
  for (std::size_t i = 0; i < coords.size(); ++i)
    (boundary[i] ? boundary_ids_ : interior_ids_).push_back(i);
}

double Mesh::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double Mesh::stretched_y(std::size_t node) const {
  if (kind != MeshKind::DumbbellSY || !stretch) return coords[node][1];
  return stretch->lam(coords[node][1]);
}

namespace {

Mesh build_interval(const DomainSpec& d, int n) {
  Mesh m{MeshKind::Interval1D, d};
  m.resolution = n;
  const double a = d.param(0), b = d.param(1);
  const double h = (b - a) / n;
  m.h = {h, 0.0};
  m.ambient_N = 1;
  m.sphere_area = 1.0;
  for (int i = 0; i <= n; ++i) {
    m.coords.push_back({a + h * i, 0.0});
    m.boundary.push_back(i == 0 || i == n);
    m.weights.push_back((i == 0 || i == n) ? 0.5 * h : h);
  }
  return m;
}

Mesh build_radial_ball(const DomainSpec& d, int n) {
  Mesh m{MeshKind::Radial1D, d};
  m.resolution = n;
  const int N = d.dimension();
  const double R = d.param(0);
  const double h = R / (n + 0.5);
  m.h = {h, 0.0};
  m.ambient_N = N;
  m.radial_origin = 0.0;
  m.sphere_area = sphere_surface(N);
  // Interior nodes offset from the origin by h/2; the last cell's outer half
  // strip belongs to the boundary node at r = R.
  for (int i = 0; i < n; ++i) {
    const double r = (i + 0.5) * h;
    m.coords.push_back({r, 0.0});
    m.boundary.push_back(false);
    m.weights.push_back(m.sphere_area * poly_cell(N - 1, i * h, (i + 1) * h));
  }
  m.coords.push_back({R, 0.0});
  m.boundary.push_back(true);
  m.weights.push_back(m.sphere_area * poly_cell(N - 1, n * h, R));
  return m;
}

Mesh build_radial_annulus(const DomainSpec& d, int n) {
  Mesh m{MeshKind::Radial1D, d};
  m.resolution = n;
  const int N = d.dimension();
  const double a = d.param(0), b = d.param(1);
  const double h = (b - a) / n;
  m.h = {h, 0.0};
  m.ambient_N = N;
  m.radial_origin = a;
  m.sphere_area = sphere_surface(N);
  for (int i = 0; i <= n; ++i) {
    const double r = a + i * h;
    const double lo = std::max(a, r - 0.5 * h);
    const double hi = std::min(b, r + 0.5 * h);
    m.coords.push_back({r, 0.0});
    m.boundary.push_back(i == 0 || i == n);
    m.weights.push_back(m.sphere_area * poly_cell(N - 1, lo, hi));
  }
  return m;
}

Mesh build_box(const DomainSpec& d, int n) {
  Mesh m{MeshKind::Box2D, d};
  m.resolution = n;
  const double Lx = d.param(0), Ly = d.param(1);
  const double hx = Lx / n, hy = Ly / n;
  m.h = {hx, hy};
  m.nx = n + 1;
  m.ny = n + 1;
  m.grid_to_node.assign(static_cast<std::size_t>(m.nx) * m.ny, -1);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const int id = static_cast<int>(m.coords.size());
      m.grid_to_node[static_cast<std::size_t>(j) * m.nx + i] = id;
      m.node_to_grid.push_back({i, j});
      m.coords.push_back({hx * i, hy * j});
      const bool bd = (i == 0 || i == n || j == 0 || j == n);
      m.boundary.push_back(bd);
      const double wx = (i == 0 || i == n) ? 0.5 * hx : hx;
      const double wy = (j == 0 || j == n) ? 0.5 * hy : hy;
      m.weights.push_back(wx * wy);
    }
  }
  return m;
}

Mesh build_disk(const DomainSpec& d, int n) {
  Mesh m{MeshKind::Disk2D, d};
  m.resolution = n;
  const double R = d.param(0);
  const double h = 2.0 * R / n;
  m.h = {h, h};
  m.nx = n + 1;
  m.ny = n + 1;
  m.grid_to_node.assign(static_cast<std::size_t>(m.nx) * m.ny, -1);
  const auto inside = [&](int i, int j) {
    if (i < 0 || j < 0 || i > n || j > n) return false;
    const double x = -R + h * i, y = -R + h * j;
    return x * x + y * y < R * R - 1e-12 * R * R;
  };
  // Fraction of h from (x,y) to the circle along direction (dx,dy).
  const auto cut_fraction = [&](double x, double y, double dx, double dy) {
    const double a = (dx * dx + dy * dy) * h * h;
    const double b = 2.0 * h * (x * dx + y * dy);
    const double c = x * x + y * y - R * R;
    const double disc = std::max(0.0, b * b - 4.0 * a * c);
    return (-b + std::sqrt(disc)) / (2.0 * a);
  };
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      if (!inside(i, j)) continue;
      const double x = -R + h * i, y = -R + h * j;
      const int id = static_cast<int>(m.coords.size());
      m.grid_to_node[static_cast<std::size_t>(j) * m.nx + i] = id;
      m.node_to_grid.push_back({i, j});
      m.coords.push_back({x, y});
      m.boundary.push_back(false);
      std::array<double, 4> cut = {1.0, 1.0, 1.0, 1.0};  // -x, +x, -y, +y
      if (!inside(i - 1, j)) cut[0] = cut_fraction(x, y, -1.0, 0.0);
      if (!inside(i + 1, j)) cut[1] = cut_fraction(x, y, 1.0, 0.0);
      if (!inside(i, j - 1)) cut[2] = cut_fraction(x, y, 0.0, -1.0);
      if (!inside(i, j + 1)) cut[3] = cut_fraction(x, y, 0.0, 1.0);
      m.cut.push_back(cut);
      m.weights.push_back(h * h * 0.5 * (cut[0] + cut[1]) * 0.5 * (cut[2] + cut[3]));
    }
  }
  return m;
}

Mesh build_dumbbell(const DomainSpec& d, int n) {
  Mesh m{MeshKind::DumbbellSY, d};
  m.resolution = n;
  const int N = d.dimension();
  const int M = N - 1;  // dimension of the x cross-section
  m.ambient_N = M;
  m.sphere_area = sphere_surface(M);
  m.stretch = StretchMap::make(d.stretch(), d.param(0));
  const int ns = n;
  const double hs = 1.0 / (ns + 0.5);
  const double hy = 4.0 / n;
  m.h = {hs, hy};
  m.nx = ns;      // interior s columns only; s = 1 is implicit Dirichlet
  m.ny = n + 1;
  m.grid_to_node.assign(static_cast<std::size_t>(m.nx) * m.ny, -1);
  m.dumbbell_c1.resize(m.ny);
  m.dumbbell_c2.resize(m.ny);
  m.dumbbell_lamp.resize(m.ny);
  const auto inside = [&](double s, double y) {
    const double ay = std::abs(y);
    if (ay <= 1.0) return s < 1.0;
    const double t = ay - 1.0;
    return s * s + t * t < 1.0 - 1e-12;
  };
  for (int j = 0; j < m.ny; ++j) {
    const double y = -2.0 + hy * j;
    const double lp = m.stretch->lamp(y);
    const double lpp = m.stretch->lampp(y);
    m.dumbbell_lamp[j] = lp;
    m.dumbbell_c1[j] = 1.0 / (lp * lp);
    m.dumbbell_c2[j] = -lpp / (lp * lp * lp);
    for (int i = 0; i < ns; ++i) {
      const double s = (i + 0.5) * hs;
      if (!inside(s, y)) continue;
      const int id = static_cast<int>(m.coords.size());
      m.grid_to_node[static_cast<std::size_t>(j) * m.nx + i] = id;
      m.node_to_grid.push_back({i, j});
      m.coords.push_back({s, y});
      m.boundary.push_back(false);
      // Unstretched reference weight; stretched integrals multiply by lamp.
      m.weights.push_back(m.sphere_area * poly_cell(M - 1, i * hs, (i + 1) * hs) * hy);
    }
  }
  return m;
}

}  // namespace

Mesh build_mesh(const DomainSpec& domain, int resolution) {
  if (resolution < 4) throw std::invalid_argument("build_mesh: resolution must be >= 4");
  Mesh m = [&] {
    switch (domain.variant()) {
      case DomainSpec::Variant::Interval:
        return build_interval(domain, resolution);
      case DomainSpec::Variant::Ball:
        return build_radial_ball(domain, resolution);
      case DomainSpec::Variant::Annulus:
        return build_radial_annulus(domain, resolution);
      case DomainSpec::Variant::Box2D:
        return build_box(domain, resolution);
      case DomainSpec::Variant::Disk2D:
        return build_disk(domain, resolution);
      case DomainSpec::Variant::Dumbbell:
        return build_dumbbell(domain, resolution);
    }
    throw std::logic_error("unreachable");
  }();
  m.finalize();
  return m;
}

void Field::ensure_finite(const char* what) const {
  if (!values.allFinite())
    throw std::domain_error(std::string(what) + ": field contains non-finite values");
}

namespace {

// First derivative at the center of a nonuniform 3-point stencil:
// samples (uL at -a), (uC at 0), (uR at +b).
double d1_nonuniform(double uL, double uC, double uR, double a, double b) {
  return -b / (a * (a + b)) * uL + (b - a) / (a * b) * uC + a / (b * (a + b)) * uR;
}

// Gradient components at a node by centered differences (one-sided at
// boundaries; masked/cut neighbors contribute the implicit zero boundary
// value at their cut distance).
void gradient_at(const Field& u, std::size_t id, double* gx, double* gy) {
  const Mesh& m = *u.mesh;
  *gx = 0.0;
  *gy = 0.0;
  if (m.dim() == 1) {
    const std::size_t n = m.node_count();
    const double h = m.h[0];
    if (id > 0 && id + 1 < n)
      *gx = d1_nonuniform(u[id - 1], u[id], u[id + 1], m.coords[id][0] - m.coords[id - 1][0],
                          m.coords[id + 1][0] - m.coords[id][0]);
    else if (id == 0)
      *gx = (u[1] - u[0]) / (m.coords[1][0] - m.coords[0][0]);
    else
      *gx = (u[id] - u[id - 1]) / (m.coords[id][0] - m.coords[id - 1][0]);
    (void)h;
    return;
  }
  const bool masked = (m.kind == MeshKind::Disk2D || m.kind == MeshKind::DumbbellSY);
  const auto [i, j] = m.node_to_grid[id];
  const auto axis = [&](int axis_idx) {
    const int di = (axis_idx == 0) ? 1 : 0;
    const int dj = (axis_idx == 0) ? 0 : 1;
    const double h = m.h[axis_idx];
    const int idm = m.at(i - di, j - dj);
    const int idp = m.at(i + di, j + dj);
    double uL = 0.0, uR = 0.0, a = h, b = h;
    bool haveL = idm >= 0, haveR = idp >= 0;
    if (haveL) uL = u[idm];
    if (haveR) uR = u[idp];
    if (!haveL && masked) {
      a = (m.kind == MeshKind::Disk2D) ? m.cut[id][axis_idx * 2] * h : h;
      haveL = true;  // zero boundary value at distance a
    }
    if (!haveR && masked) {
      b = (m.kind == MeshKind::Disk2D) ? m.cut[id][axis_idx * 2 + 1] * h : h;
      haveR = true;
    }
    if (haveL && haveR) return d1_nonuniform(uL, u[id], uR, a, b);
    if (haveR) return (uR - u[id]) / b;
    if (haveL) return (u[id] - uL) / a;
    return 0.0;
  };
  *gx = axis(0);
  *gy = axis(1);
}

}  // namespace

NormReport norms(const Field& u) {
  u.ensure_finite("norms");
  const Mesh& m = *u.mesh;
  NormReport r;
  double l1 = 0.0, l2 = 0.0, semi = 0.0, sup = 0.0;
  for (std::size_t id = 0; id < m.node_count(); ++id) {
    const double w = m.weights[id];
    const double v = u[id];
    l1 += w * std::abs(v);
    l2 += w * v * v;
    sup = std::max(sup, std::abs(v));
    double gx, gy;
    gradient_at(u, id, &gx, &gy);
    semi += w * (gx * gx + gy * gy);
  }
  r.l1 = l1;
  r.l2 = std::sqrt(l2);
  r.sup = sup;
  r.h1_semi = std::sqrt(semi);
  r.h1 = std::sqrt(l2 + semi);
  return r;
}

namespace {

// Ghost value for an outside grid corner of a masked 2D mesh: average of the
// linear extensions u_n (1 - 1/theta) from inside axis neighbors, where
// theta*h is the neighbor's distance to the boundary crossing.
double ghost_value(const Field& u, int gi, int gj) {
  const Mesh& m = *u.mesh;
  double acc = 0.0;
  int cnt = 0;
  static const int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (const auto& d : dirs) {
    const int ni = gi + d[0], nj = gj + d[1];
    const int nid = m.at(ni, nj);
    if (nid < 0) continue;
    double theta = 1.0;
    if (m.kind == MeshKind::Disk2D) {
      // crossing from the neighbor back toward (gi, gj)
      const int axis = (d[0] != 0) ? 0 : 1;
      const int side = (axis == 0) ? (d[0] > 0 ? 0 : 1) : (d[1] > 0 ? 2 : 3);
      theta = m.cut[nid][side];
    }
    if (theta <= 1e-9) continue;
    acc += u[nid] * (1.0 - 1.0 / theta);
    ++cnt;
  }
  return cnt ? acc / cnt : 0.0;
}

}  // namespace

double interpolate(const Field& u, const std::array<double, 2>& p) {
  const Mesh& m = *u.mesh;
  if (m.dim() == 1) {
    // coords are sorted ascending in 1D
    const std::size_t n = m.node_count();
    const double x = p[0];
    if (x <= m.coords[0][0]) return u[0];
    if (x >= m.coords[n - 1][0]) return u[n - 1];
    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (m.coords[mid][0] <= x ? lo : hi) = mid;
    }
    const double x0 = m.coords[lo][0], x1 = m.coords[hi][0];
    const double f = (x - x0) / (x1 - x0);
    return (1.0 - f) * u[lo] + f * u[hi];
  }
  // 2D structured: locate the cell
  double ox = 0.0, oy = 0.0;  // grid origin
  if (m.kind == MeshKind::Box2D) {
    ox = 0.0;
    oy = 0.0;
  } else if (m.kind == MeshKind::Disk2D) {
    ox = -m.domain.param(0);
    oy = -m.domain.param(0);
  } else {  // DumbbellSY
    ox = 0.5 * m.h[0];
    oy = -2.0;
  }
  const double fx = (p[0] - ox) / m.h[0];
  const double fy = (p[1] - oy) / m.h[1];
  int ci = static_cast<int>(std::floor(fx));
  int cj = static_cast<int>(std::floor(fy));
  ci = std::clamp(ci, 0, m.nx - 2);
  cj = std::clamp(cj, 0, m.ny - 2);
  const double tx = std::clamp(fx - ci, 0.0, 1.0);
  const double ty = std::clamp(fy - cj, 0.0, 1.0);
  const auto corner = [&](int gi, int gj) {
    const int id = m.at(gi, gj);
    if (id >= 0) return u[id];
    if (m.kind == MeshKind::Box2D) return 0.0;  // outside a full grid: clamp handled above
    return ghost_value(u, gi, gj);
  };
  return corner(ci, cj) * (1.0 - tx) * (1.0 - ty) + corner(ci + 1, cj) * tx * (1.0 - ty) +
         corner(ci, cj + 1) * (1.0 - tx) * ty + corner(ci + 1, cj + 1) * tx * ty;
}

}  // namespace stablelab
