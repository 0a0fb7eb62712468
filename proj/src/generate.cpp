#include "gsieve/generate.hpp"

#include "gsieve/error.hpp"
#include "gsieve/oracle.hpp"
#include "gsieve/sampling.hpp"

#include <cmath>

namespace gsieve {

namespace {

Rational grid(Rng& rng, std::int64_t lo_num, std::int64_t hi_num, std::int64_t den) {
  return Rational(rng.integer(lo_num, hi_num), den);
}

CenteredPolytope translate(const CenteredPolytope& K, const RVector& c) {
  RVector b = K.b();
  for (std::size_t i = 0; i < K.facets(); ++i) b[i] += dot(K.A().row(i), c);
  return CenteredPolytope(K.A(), std::move(b), K.center() + c, K.inner_radius(), K.outer_radius());
}

enum class Shape { box, parallelotope, simplex };

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::box: return "box";
    case Shape::parallelotope: return "parallelotope";
    case Shape::simplex: return "simplex";
  }
  return "?";
}

// Body with barycenter at the origin, roughly `scale` across in every direction.
CenteredPolytope centered_shape(Shape shape, std::size_t n, const Rational& scale, Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    try {
      if (shape == Shape::box) {
        RVector lo(n), hi(n);
        for (std::size_t j = 0; j < n; ++j) {
          hi[j] = scale * grid(rng, 3, 12, 10);
          lo[j] = -hi[j];
        }
        return CenteredPolytope::box(lo, hi);
      }
      if (shape == Shape::parallelotope) {
        RMatrix W(n, n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) W(i, j) = grid(rng, -2, 2, 2);
        if (abs(determinant(W)) < Rational(1, 2)) continue;
        RMatrix A(2 * n, n);
        RVector b(2 * n, scale);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            A(i, j) = W(i, j);
            A(n + i, j) = -W(i, j);
          }
        }
        auto P = CenteredPolytope::from_inequalities(std::move(A), std::move(b)).origin_centered();
        if (P.inner_radius() < 0.1 * P.outer_radius()) continue;
        return P;
      }
      std::vector<RVector> verts(n + 1, RVector(n));
      RVector mean(n, Rational(0));
      for (auto& v : verts) {
        for (std::size_t j = 0; j < n; ++j) v[j] = scale * grid(rng, -10, 10, 10);
        mean = mean + v;
      }
      mean = Rational(1, static_cast<long>(n + 1)) * mean;
      for (auto& v : verts) v = v - mean;
      auto P = CenteredPolytope::simplex(verts).origin_centered();
      if (P.inner_radius() < 0.1 * P.outer_radius()) continue;
      return P;
    } catch (const InvalidInput&) {
      continue;
    }
  }
  throw ContractViolation("generator: could not draw a non-degenerate body");
}

Shape random_shape(Rng& rng) { return static_cast<Shape>(rng.integer(0, 2)); }

RVector random_point_in(const CenteredPolytope& K, Rng& rng) {
  SamplerConfig cfg;
  cfg.seed = rng.engine()();
  PolytopeSampler sampler(K, cfg);
  return to_rvector(sampler.sample());
}

IVector random_coefficients(std::size_t n, Rng& rng, std::int64_t bound) {
  IVector z(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.integer(-bound, bound);
  return z;
}

std::uint64_t stream_of(const char* kind) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const char* p = kind; *p; ++p) h = (h ^ static_cast<unsigned char>(*p)) * 1099511628211ULL;
  return h;
}

Instance base_instance(const char* kind, std::size_t n, std::uint64_t seed) {
  if (n == 0 || n > 6) throw InvalidInput("generator: n must be in [1, 6]");
  Instance inst;
  inst.meta["kind"] = kind;
  inst.meta["n"] = n;
  inst.meta["seed"] = seed;
  inst.params.seed = seed;
  return inst;
}

}  // namespace

CenteredPolytope unit_cube(std::size_t n) {
  return CenteredPolytope::box(RVector(n, Rational(-1)), RVector(n, Rational(1)));
}

CenteredPolytope shifted_cube(std::size_t n) {
  return CenteredPolytope::box(RVector(n, Rational(-1)), RVector(n, Rational(2)))
      .origin_centered();
}

CenteredPolytope random_gauge_body(std::size_t n, Rng& rng, double min_gamma) {
  const std::size_t m = 2 * n + 2;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    RMatrix A(m, n);
    RVector b(m);
    bool zero_row = false;
    for (std::size_t i = 0; i < m; ++i) {
      bool nz = false;
      for (std::size_t j = 0; j < n; ++j) {
        A(i, j) = grid(rng, -8, 8, 4);
        nz = nz || A(i, j) != 0;
      }
      zero_row = zero_row || !nz;
      b[i] = grid(rng, 4, 16, 8);
    }
    if (zero_row) continue;
    try {
      auto P = CenteredPolytope::from_inequalities(std::move(A), std::move(b)).origin_centered();
      GammaEstimate g = estimate_gamma(P, 4000, rng.engine()());
      if (g.value - 2.0 * g.std_error < min_gamma) continue;
      return P;
    } catch (const InvalidInput&) {
      continue;
    }
  }
  throw ContractViolation("generator: no bounded random body with the requested symmetry");
}

CenteredPolytope make_body(BodyKind kind, std::size_t n, Rng& rng) {
  switch (kind) {
    case BodyKind::cube: return unit_cube(n);
    case BodyKind::shifted_cube: return shifted_cube(n);
    case BodyKind::random: return random_gauge_body(n, rng);
  }
  throw InvalidInput("unknown body kind");
}

const char* body_kind_name(BodyKind kind) {
  switch (kind) {
    case BodyKind::cube: return "cube";
    case BodyKind::shifted_cube: return "shifted-cube";
    case BodyKind::random: return "random";
  }
  return "?";
}

LatticeBasis random_basis(std::size_t n, Rng& rng) {
  while (true) {
    RMatrix B(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) B(i, j) = grid(rng, -6, 6, 2);
    if (abs(determinant(B)) >= Rational(1, 2)) return LatticeBasis(std::move(B));
  }
}

Subspace random_line(std::size_t n, Rng& rng) {
  while (true) {
    RVector w(n);
    bool nz = false;
    for (auto& e : w) {
      e = rng.integer(-2, 2);
      nz = nz || e != 0;
    }
    if (nz) return Subspace(n, {w});
  }
}

RVector random_target(const LatticeBasis& B, Rng& rng) {
  const auto& Bd = B.basis_double();
  const Eigen::Index n = Bd.rows();
  Eigen::VectorXd lo = Eigen::VectorXd::Zero(n), hi = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    lo += Bd.col(j).cwiseMin(0.0);
    hi += Bd.col(j).cwiseMax(0.0);
  }
  Eigen::VectorXd mid = (lo + hi) / 2.0;
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.uniform(mid[i] - (hi[i] - lo[i]), mid[i] + (hi[i] - lo[i]));
  return to_rvector(x);
}

CenteredPolytope scale_about(const CenteredPolytope& K, const RVector& b, const Rational& s) {
  if (!(s > 0)) throw InvalidInput("scale_about: factor must be positive");
  RVector rhs(K.facets());
  for (std::size_t i = 0; i < K.facets(); ++i) {
    Rational ab = dot(K.A().row(i), b);
    rhs[i] = ab + s * (K.b()[i] - ab);
  }
  RVector center = b + s * (K.center() - b);
  const double sd = to_double(s);
  return CenteredPolytope(K.A(), std::move(rhs), std::move(center), K.inner_radius() * sd * (1.0 - 1e-12),
                          K.outer_radius() * sd * (1.0 + 1e-12));
}

Instance gen_random_cvp(std::size_t n, std::uint64_t seed) {
  Instance inst = base_instance("random-cvp", n, seed);
  Rng rng(seed, stream_of("random-cvp"));
  auto kind = static_cast<BodyKind>(rng.integer(0, 2));
  inst.body = make_body(kind, n, rng);
  inst.lattice = random_basis(n, rng);
  inst.target = random_target(*inst.lattice, rng);
  inst.params.eps = 0.25;
  inst.meta["body"] = body_kind_name(kind);
  return inst;
}

Instance gen_planted_cvp(std::size_t n, std::uint64_t seed) {
  Instance inst = base_instance("planted-cvp", n, seed);
  Rng rng(seed, stream_of("planted-cvp"));
  auto kind = static_cast<BodyKind>(rng.integer(0, 2));
  CenteredPolytope C = make_body(kind, n, rng);
  LatticeBasis B = random_basis(n, rng);
  LatticeSolution shortest = svp_brute(C, B);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    // Offset of gauge at most 2 lambda_1 from a random lattice point.
    Rational rho = Rational(2) * shortest.value * grid(rng, 1, 100, 100);
    RVector u = random_point_in(C, rng);
    RVector x = B.point(random_coefficients(n, rng, 2)) + rho * u;
    LatticeSolution closest = cvp_brute(C, B, x);
    if (closest.value > Rational(2) * shortest.value) continue;
    inst.body = C;
    inst.lattice = B;
    inst.target = x;
    inst.params.exact_t = 2.0;
    inst.meta["body"] = body_kind_name(kind);
    inst.meta["lambda1"] = format_rational(shortest.value);
    inst.meta["distance"] = format_rational(closest.value);
    return inst;
  }
  throw ContractViolation("generator: could not plant a CVP target");
}

Instance gen_sap(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("sap instances need n >= 2");
  Instance inst = base_instance("sap", n, seed);
  Rng rng(seed, stream_of("sap"));
  auto kind = static_cast<BodyKind>(rng.integer(0, 2));
  inst.body = make_body(kind, n, rng);
  inst.lattice = random_basis(n, rng);
  inst.subspace = random_line(n, rng);
  inst.params.eps = 0.5;
  inst.meta["body"] = body_kind_name(kind);
  return inst;
}

Instance gen_planted_ip(std::size_t n, std::uint64_t seed, double eps) {
  Instance inst = base_instance("planted-ip", n, seed);
  Rng rng(seed, stream_of("planted-ip"));
  LatticeBasis B = random_basis(n, rng);
  const Rational q = to_rational(eps);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Shape shape = random_shape(rng);
    CenteredPolytope K0 = centered_shape(shape, n, grid(rng, 5, 15, 10), rng);
    RVector p = B.point(random_coefficients(n, rng, 2));
    // p - c inside a slightly smaller copy of K0 / (1 + eps).
    CenteredPolytope inner = K0.scaled(Rational(9, 10) / (1 + q));
    RVector c = p - random_point_in(inner, rng);
    CenteredPolytope K = translate(K0, c);
    CenteredPolytope deep = scale_about(K, c, 1 / (1 + q));
    auto witness = ip_brute(deep, B);
    if (!witness) continue;
    inst.body = K;
    inst.lattice = B;
    inst.params.eps = eps;
    inst.meta["shape"] = shape_name(shape);
    inst.meta["barycenter"] = vector_to_json(c);
    inst.meta["deep_point"] = vector_to_json(witness->point);
    return inst;
  }
  throw ContractViolation("generator: could not plant a feasible IP instance");
}

Instance gen_empty_ip(std::size_t n, std::uint64_t seed, double eps) {
  Instance inst = base_instance("empty-ip", n, seed);
  Rng rng(seed, stream_of("empty-ip"));
  LatticeBasis B = random_basis(n, rng);
  const Rational q = to_rational(eps);
  Rational scale(4, 5);
  for (int attempt = 0; attempt < 2000; ++attempt) {
    if (attempt > 0 && attempt % 50 == 0) scale *= Rational(3, 4);
    Shape shape = random_shape(rng);
    CenteredPolytope K0 = centered_shape(shape, n, scale * grid(rng, 5, 10, 10), rng);
    RVector c = random_target(B, rng);
    CenteredPolytope K = translate(K0, c);
    CenteredPolytope blowup = scale_about(K, c, 1 + q);
    if (ip_brute(blowup, B)) continue;
    inst.body = K;
    inst.lattice = B;
    inst.params.eps = eps;
    inst.meta["shape"] = shape_name(shape);
    inst.meta["barycenter"] = vector_to_json(c);
    return inst;
  }
  throw ContractViolation("generator: could not place an integer-free blowup");
}

Instance gen_opt(std::size_t n, std::uint64_t seed, double delta) {
  Instance inst = base_instance("opt", n, seed);
  Rng rng(seed, stream_of("opt"));
  LatticeBasis B = random_basis(n, rng);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Shape shape = random_shape(rng);
    CenteredPolytope K0 = centered_shape(shape, n, grid(rng, 10, 25, 10), rng);
    RVector c = B.point(random_coefficients(n, rng, 2)) + random_point_in(K0.scaled(Rational(1, 2)), rng);
    CenteredPolytope K = translate(K0, c);
    if (!ip_brute(K, B)) continue;
    RVector v(n);
    bool nz = false;
    for (auto& e : v) {
      e = grid(rng, -6, 6, 2);
      nz = nz || e != 0;
    }
    if (!nz) continue;
    inst.body = K;
    inst.lattice = B;
    inst.objective = Objective{v, delta};
    inst.params.eps = 0.5;
    inst.meta["shape"] = shape_name(shape);
    inst.meta["barycenter"] = vector_to_json(c);
    return inst;
  }
  throw ContractViolation("generator: could not draw a feasible optimization instance");
}

std::optional<RVector> instance_barycenter(const Instance& inst) {
  if (!inst.meta.contains("barycenter")) return std::nullopt;
  return vector_from_json(inst.meta.at("barycenter"));
}

}  // namespace gsieve
