#include "fkz/systems.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

#include "fkz/matrix_io.hpp"
#include "fkz/oracle.hpp"

namespace fkz {

namespace {

[[noreturn]] void reject(const ScenarioSpec& s, const char* rule) {
  throw std::invalid_argument(fmt::format("scenario {} with m={} n={} k={}: {}",
                                          to_string(s.scenario), s.m, s.n, s.k,
                                          rule));
}

}  // namespace

void ScenarioSpec::validate() const {
  if (m == 0 || n == 0 || k == 0) reject(*this, "dimensions must be positive");
  switch (scenario) {
    case Scenario::s1:
      if (!(k < std::min(m, n) || (n < k && k < m)))
        reject(*this, "S1 needs k < min(m, n) or n < k < m");
      break;
    case Scenario::s2:
      if (!(k > m)) reject(*this, "S2 needs k > m (U underdetermined)");
      break;
    case Scenario::s3a:
      if (!(m > n && n < k && k < m)) reject(*this, "S3a needs n < k < m");
      break;
    case Scenario::s3b:
      if (!(m > n && k < n)) reject(*this, "S3b needs k < n < m");
      break;
    case Scenario::custom:
      reject(*this, "custom systems are loaded, not generated");
  }
}

ScenarioSpec ScenarioSpec::preset(Scenario s, std::uint64_t seed) {
  switch (s) {
    case Scenario::s1: return {s, 60, 40, 20, seed};
    case Scenario::s2: return {s, 40, 60, 50, seed};
    case Scenario::s3a: return {s, 120, 50, 75, seed};
    case Scenario::s3b: return {s, 120, 75, 50, seed};
    case Scenario::custom: break;
  }
  throw std::invalid_argument("no preset for custom scenario");
}

DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::vector<double> values(rows * cols);
  for (double& v : values) v = rng.gaussian();
  return DenseMatrix(rows, cols, std::move(values));
}

Vector gaussian_vector(std::size_t len, Rng& rng) {
  Vector v(len);
  for (double& x : v) x = rng.gaussian();
  return v;
}

DenseMatrix random_orthonormal(std::size_t m, std::size_t k, Rng& rng) {
  if (k > m) throw std::invalid_argument("random_orthonormal: k > m");
  std::vector<Vector> q;
  q.reserve(k);
  while (q.size() < k) {
    Vector v = gaussian_vector(m, rng);
    // modified Gram-Schmidt, twice
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : q) {
        const double c = dot(e, v);
        for (std::size_t i = 0; i < m; ++i) v[i] -= c * e[i];
      }
    }
    const double len = norm(v);
    if (len < 1e-8) continue;
    for (double& x : v) x /= len;
    q.push_back(std::move(v));
  }
  std::vector<double> values(m * k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m; ++i) values[i * k + j] = q[j][i];
  return DenseMatrix(m, k, std::move(values));
}

Vector make_inconsistent_rhs(const DenseMatrix& u, const DenseMatrix& v,
                             std::span<const double> beta,
                             std::span<const double> w) {
  const DenseMatrix x = multiply(u, v);
  if (w.size() != x.rows() || beta.size() != x.cols()) {
    throw std::invalid_argument("make_inconsistent_rhs: dimension mismatch");
  }
  const SvdFactors f = svd(x);
  if (f.rank >= x.rows()) {
    throw std::invalid_argument(
        "make_inconsistent_rhs: U V has full row rank, null(X^T) is trivial");
  }
  const Vector signal = matvec(u, matvec(v, beta));
  Vector r = subtract(w, project_colspace(f, w));
  // second pass removes what rounding left in range(X)
  r = subtract(r, project_colspace(f, r));
  const double rn = norm(r);
  if (!(rn > 1e-12 * norm(w))) {
    throw std::invalid_argument(
        "make_inconsistent_rhs: draw has no component outside range(U V)");
  }
  const double sn = norm(signal);
  const double scale = sn > 0.0 ? kResidualRatio * sn / rn : 1.0 / rn;
  Vector y = signal;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += scale * r[i];
  return y;
}

Vector make_inconsistent_rhs(const DenseMatrix& u, const DenseMatrix& v,
                             std::span<const double> beta, Rng& rng) {
  const Vector w = gaussian_vector(u.rows(), rng);
  return make_inconsistent_rhs(u, v, beta, w);
}

namespace {

GeneratedSystem assemble(const ScenarioSpec& spec, DenseMatrix u, DenseMatrix v,
                         Vector beta, Rng& rng) {
  Vector y;
  double ratio = 0.0;
  if (spec.consistent()) {
    y = matvec(u, matvec(v, beta));
  } else {
    y = make_inconsistent_rhs(u, v, beta, rng);
    const Vector signal = matvec(u, matvec(v, beta));
    ratio = norm(subtract(y, signal)) / norm(signal);
  }
  return GeneratedSystem{
      FactoredSystem(std::move(u), std::move(v), std::move(y), spec.scenario),
      std::move(beta), ratio};
}

}  // namespace

GeneratedSystem gen_gaussian_factored(const ScenarioSpec& spec, Rng& rng) {
  spec.validate();
  DenseMatrix u = gaussian_matrix(spec.m, spec.k, rng);
  DenseMatrix v = gaussian_matrix(spec.k, spec.n, rng);
  Vector beta = gaussian_vector(spec.n, rng);
  return assemble(spec, std::move(u), std::move(v), std::move(beta), rng);
}

GeneratedSystem gen_gaussian_factored(const ScenarioSpec& spec) {
  Rng rng = Rng::stream(spec.seed, 0);
  return gen_gaussian_factored(spec, rng);
}

GeneratedSystem gen_conditioned_factored(const ScenarioSpec& spec,
                                         double kappa_sq_u, double kappa_sq_v,
                                         Rng& rng) {
  spec.validate();
  if (spec.scenario != Scenario::s1 && spec.scenario != Scenario::s3b) {
    throw std::invalid_argument(
        "gen_conditioned_factored: only S1 and S3b have k <= min(m, n)");
  }
  if (spec.k > std::min(spec.m, spec.n)) {
    throw std::invalid_argument("gen_conditioned_factored: k > min(m, n)");
  }
  if (!(kappa_sq_u >= 1.0) || !(kappa_sq_v >= 1.0)) {
    throw std::invalid_argument(
        "gen_conditioned_factored: condition numbers must be >= 1");
  }
  const std::size_t k = spec.k;
  const DenseMatrix qm = random_orthonormal(spec.m, k, rng);
  const DenseMatrix qn = random_orthonormal(spec.n, k, rng);
  const DenseMatrix rot = random_orthonormal(k, k, rng);

  auto spectrum = [k](double kappa_sq) {
    Vector s(k);
    for (std::size_t i = 0; i < k; ++i) {
      const double frac = k == 1 ? 0.0 : static_cast<double>(k - 1 - i) / (k - 1);
      s[i] = std::pow(kappa_sq, 0.5 * frac);  // descending, s[k-1] = 1
    }
    return s;
  };
  const Vector su = spectrum(kappa_sq_u);
  const Vector sv = spectrum(kappa_sq_v);

  // U = Qm diag(su) R^T,  V = R diag(sv) Qn^T
  std::vector<double> uv(spec.m * k, 0.0);
  for (std::size_t i = 0; i < spec.m; ++i)
    for (std::size_t c = 0; c < k; ++c) {
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += qm(i, p) * su[p] * rot(c, p);
      uv[i * k + c] = acc;
    }
  std::vector<double> vv(k * spec.n, 0.0);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = 0; j < spec.n; ++j) {
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += rot(r, p) * sv[p] * qn(j, p);
      vv[r * spec.n + j] = acc;
    }
  DenseMatrix u(spec.m, k, std::move(uv));
  DenseMatrix v(k, spec.n, std::move(vv));
  Vector beta = gaussian_vector(spec.n, rng);
  return assemble(spec, std::move(u), std::move(v), std::move(beta), rng);
}

FactoredSystem load_factored(const std::filesystem::path& u_path,
                             const std::filesystem::path& v_path,
                             const std::filesystem::path& y_path) {
  DenseMatrix u = load_matrix(u_path);
  DenseMatrix v = load_matrix(v_path);
  Vector y = load_vector(y_path);
  return FactoredSystem(std::move(u), std::move(v), std::move(y),
                        Scenario::custom);
}

void save_factored(const std::filesystem::path& dir, const FactoredSystem& sys) {
  std::filesystem::create_directories(dir);
  save_matrix(dir / "U.mat", sys.u());
  save_matrix(dir / "V.mat", sys.v());
  save_vector(dir / "y.vec", sys.rhs());
}

}  // namespace fkz
