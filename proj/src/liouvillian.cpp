#include "kerr2jc/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/SparseLU>
#include <Eigen/SVD>
#include <Eigen/QR>
#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/Polynomials>

#include "kerr2jc/errors.hpp"
#include "kerr2jc/operators.hpp"

namespace kerr2jc {

namespace {

using Triplet = Eigen::Triplet<Complex>;

// (A kron B)(i*rB + k, j*cB + l) = A(i,j) B(k,l); both operands sparse.
void append_kron(const SparseMatrix& a, const SparseMatrix& b, Complex scale, std::vector<Triplet>& out) {
  for (int ja = 0; ja < a.outerSize(); ++ja) {
    for (SparseMatrix::InnerIterator ia(a, ja); ia; ++ia) {
      for (int jb = 0; jb < b.outerSize(); ++jb) {
        for (SparseMatrix::InnerIterator ib(b, jb); ib; ++ib) {
          out.emplace_back(ia.row() * b.rows() + ib.row(), ja * b.cols() + jb,
                           scale * ia.value() * ib.value());
        }
      }
    }
  }
}

SparseMatrix sparse_identity(int n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

}  // namespace

Liouvillian::Liouvillian(HilbertSpace space, SparseMatrix matrix)
    : space_(space), matrix_(std::move(matrix)) {
  const Eigen::Index n = static_cast<Eigen::Index>(space_.dim()) * space_.dim();
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw DomainError("Liouvillian: matrix must be dim^2 x dim^2");
  }
  matrix_.makeCompressed();
}

DenseMatrix Liouvillian::apply(const DenseMatrix& rho) const {
  return unvectorize(matrix_ * vectorize(rho), space_.dim());
}

Liouvillian build_liouvillian(const Operator& hamiltonian,
                              const std::vector<CollapseChannel>& collapse) {
  const HilbertSpace& space = hamiltonian.space();
  const int d = space.dim();
  const SparseMatrix id = sparse_identity(d);
  const SparseMatrix& h = hamiltonian.matrix();
  const SparseMatrix h_t = h.transpose();

  std::vector<Triplet> t;
  const Complex minus_i(0.0, -1.0);
  append_kron(id, h, minus_i, t);
  append_kron(h_t, id, -minus_i, t);

  for (const CollapseChannel& c : collapse) {
    if (c.rate < 0.0 || !std::isfinite(c.rate)) {
      throw DomainError("build_liouvillian: collapse rate must be finite and >= 0, got " +
                        std::to_string(c.rate));
    }
    if (!(c.op.space() == space)) throw DomainError("build_liouvillian: collapse operator on another space");
    if (c.rate == 0.0) continue;
    const SparseMatrix& o = c.op.matrix();
    const SparseMatrix o_conj = o.conjugate();
    const SparseMatrix odo = o.adjoint() * o;
    const SparseMatrix odo_t = odo.transpose();
    append_kron(o_conj, o, 2.0 * c.rate, t);
    append_kron(id, odo, -c.rate, t);
    append_kron(odo_t, id, -c.rate, t);
  }

  SparseMatrix m(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  m.setFromTriplets(t.begin(), t.end());
  m.prune(Complex(0.0), 0.0);
  return {space, std::move(m)};
}

Liouvillian model_liouvillian(const ModelParams& p, const HilbertSpace& space) {
  p.validate();
  return build_liouvillian(build_hamiltonian(p, space),
                           {{annihilation(space), 0.5 * p.kappa},
                            {sigma(space, Level::Ground, Level::Metastable), 0.5 * p.gamma}});
}

Vector trace_functional(int dim) {
  Vector t = Vector::Zero(static_cast<Eigen::Index>(dim) * dim);
  for (int i = 0; i < dim; ++i) t(i + static_cast<Eigen::Index>(i) * dim) = 1.0;
  return t;
}

std::size_t null_space_dimension(const Liouvillian& L, double relative_tol) {
  const SparseMatrix& m = L.matrix();
  const double scale = std::max(max_abs(m), 1e-300);
  if (m.rows() <= 1600) {
    Eigen::BDCSVD<DenseMatrix> svd(DenseMatrix(m), 0);
    const auto& s = svd.singularValues();
    return static_cast<std::size_t>((s.array() <= relative_tol * s(0)).count());
  }
  // Block inverse iteration with a small shift, then count near-null directions of L in the block.
  constexpr int kBlock = 6;
  const double shift = 1e-8 * scale;
  SparseMatrix id(m.rows(), m.cols());
  id.setIdentity();
  const SparseMatrix shifted = m - shift * id;
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(shifted);
  if (lu.info() != Eigen::Success) throw SolverError("null_space_dimension: shifted LU failed");
  std::mt19937 rng(20240611u);
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseMatrix block(m.rows(), kBlock);
  for (Eigen::Index j = 0; j < block.cols(); ++j) {
    for (Eigen::Index i = 0; i < block.rows(); ++i) block(i, j) = Complex(normal(rng), normal(rng));
  }
  for (int it = 0; it < 6; ++it) {
    const DenseMatrix solved = lu.solve(block);
    Eigen::HouseholderQR<DenseMatrix> qr(solved);
    block = qr.householderQ() * DenseMatrix::Identity(m.rows(), kBlock);
  }
  const DenseMatrix image = m * block;
  Eigen::JacobiSVD<DenseMatrix> svd(image);
  const auto& s = svd.singularValues();
  return static_cast<std::size_t>((s.array() <= relative_tol * scale).count());
}

SteadyState steady_state(const Liouvillian& L) {
  const int d = L.space().dim();
  const Eigen::Index n = L.matrix().rows();
  const SparseMatrix& l = L.matrix();

  // Row 0 (the <0,g|rho|0,g> equation) is redundant given trace preservation.
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(l.nonZeros()) + d);
  for (int j = 0; j < l.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(l, j); it; ++it) {
      if (it.row() != 0) t.emplace_back(it.row(), j, it.value());
    }
  }
  for (int i = 0; i < d; ++i) t.emplace_back(0, i + static_cast<Eigen::Index>(i) * d, 1.0);
  SparseMatrix system(n, n);
  system.setFromTriplets(t.begin(), t.end());
  system.makeCompressed();

  auto degenerate = [&]() -> SteadyState {
    const std::size_t dim = null_space_dimension(L);
    if (dim > 1) throw DegenerateSteadyStateError(dim);
    throw SolverError("steady_state: ill-conditioned linear system (detected null-space dimension " +
                      std::to_string(dim) + ")");
  };

  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(system);
  lu.factorize(system);
  if (lu.info() != Eigen::Success) return degenerate();

  Vector rhs = Vector::Zero(n);
  rhs(0) = 1.0;
  Vector x = lu.solve(rhs);
  for (int it = 0; it < 3; ++it) x += lu.solve(Vector(rhs - system * x));

  // Independent right-hand side: a singular system shows up as a blown-up solution.
  Vector probe(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    probe(k) = Complex(std::cos(0.7 * static_cast<double>(k) + 0.3), std::sin(1.3 * static_cast<double>(k)));
  }
  const Vector y = lu.solve(probe);
  const double scale = max_abs(system);
  const double growth = y.cwiseAbs().maxCoeff() * scale / probe.cwiseAbs().maxCoeff();
  const double probe_residual = (system * y - probe).cwiseAbs().maxCoeff() / probe.cwiseAbs().maxCoeff();
  if (!x.allFinite() || !y.allFinite() || growth > 1e12 || probe_residual > 1e-8) return degenerate();

  DensityMatrix rho = DensityMatrix::normalized(L.space(), unvectorize(x, d));
  const double residual = (l * vectorize(rho.matrix())).cwiseAbs().maxCoeff();
  if (!(residual < 1e-8)) {
    throw SolverError("steady_state: residual " + std::to_string(residual) + " exceeds 1e-8");
  }
  return {std::move(rho), residual};
}

// ---------------------------------------------------------------------------
// Propagation

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Poles z_i of the diagonal (p, p) Pade approximant of exp; they lie in Re z > 0.
std::vector<Complex> pade_poles(int p) {
  Eigen::VectorXd coeffs(p + 1);
  for (int j = 0; j <= p; ++j) {
    const double c = factorial(2 * p - j) * factorial(p) / (factorial(2 * p) * factorial(j) * factorial(p - j));
    coeffs(j) = (j % 2 == 0) ? c : -c;
  }
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);
  std::vector<Complex> roots(solver.roots().data(), solver.roots().data() + solver.roots().size());
  for (Complex& z : roots) {
    for (int it = 0; it < 4; ++it) {
      Complex val = 0.0;
      Complex der = 0.0;
      for (int j = p; j >= 0; --j) {
        der = der * z + val;
        val = val * z + coeffs(j);
      }
      if (std::abs(der) == 0.0) break;
      z -= val / der;
    }
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

using LU = Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>;

struct PadeStep {
  double h = 0.0;
  std::vector<std::unique_ptr<LU>> factors;
};

using OdeState = std::vector<Complex>;

}  // namespace

struct Propagator::Impl {
  SparseMatrix l;
  PropagationOptions options;
  std::vector<Complex> poles;
  std::vector<PadeStep> cache;

  PadeStep& step_for(double h) {
    for (PadeStep& s : cache) {
      if (std::abs(s.h - h) <= 1e-12 * std::max(1.0, h)) return s;
    }
    if (cache.size() >= 8) cache.erase(cache.begin());
    PadeStep s;
    s.h = h;
    const SparseMatrix id = sparse_identity(static_cast<int>(l.rows()));
    for (Complex z : poles) {
      SparseMatrix shifted = SparseMatrix(h * l) - z * id;
      shifted.makeCompressed();
      auto lu = std::make_unique<LU>();
      lu->analyzePattern(shifted);
      lu->factorize(shifted);
      if (lu->info() != Eigen::Success) throw SolverError("Propagator: Pade factorization failed");
      s.factors.push_back(std::move(lu));
    }
    cache.push_back(std::move(s));
    return cache.back();
  }

  void pade_advance(Vector& v, double dt) {
    const int substeps = std::max(1, static_cast<int>(std::ceil(dt / options.max_step - 1e-9)));
    PadeStep& s = step_for(dt / substeps);
    const double sign = (options.pade_order % 2 == 0) ? 1.0 : -1.0;
    for (int k = 0; k < substeps; ++k) {
      // (-1)^p prod_i (hL + z_i)(hL - z_i)^{-1}; every factor has modulus <= 1 on Re <= 0.
      v *= sign;
      for (std::size_t i = 0; i < poles.size(); ++i) {
        const Vector y = s.factors[i]->solve(v);
        v = s.h * (l * y) + poles[i] * y;
      }
    }
  }

  void rk_advance(Vector& v, double dt, double t0) {
    namespace ode = boost::numeric::odeint;
    OdeState x(v.data(), v.data() + v.size());
    auto rhs = [this](const OdeState& in, OdeState& out, double) {
      out.resize(in.size());
      Eigen::Map<Vector>(out.data(), static_cast<Eigen::Index>(out.size())) =
          l * Eigen::Map<const Vector>(in.data(), static_cast<Eigen::Index>(in.size()));
    };
    auto stepper = ode::make_controlled(options.abs_tol, options.rel_tol,
                                        ode::runge_kutta_dopri5<OdeState, double, OdeState, double>());
    std::size_t steps = 0;
    auto guard = [&steps, t0](const OdeState&, double t) {
      if (++steps > 2000000) {
        throw SolverError("Propagator: Runge-Kutta exceeded the step budget near tau = " +
                          std::to_string(t0 + t));
      }
    };
    try {
      ode::integrate_adaptive(stepper, rhs, x, 0.0, dt, std::min(dt, 1e-3), guard);
    } catch (const SolverError&) {
      throw;
    } catch (const std::exception& e) {
      throw SolverError("Propagator: Runge-Kutta step-size failure near tau = " +
                        std::to_string(t0) + " (" + e.what() + ")");
    }
    v = Eigen::Map<const Vector>(x.data(), static_cast<Eigen::Index>(x.size()));
  }
};

Propagator::Propagator(const Liouvillian& L, PropagationOptions options)
    : impl_(std::make_unique<Impl>()) {
  if (!(options.max_step > 0.0)) throw DomainError("Propagator: max_step must be > 0");
  if (options.pade_order < 1 || options.pade_order > 13) {
    throw DomainError("Propagator: pade_order must be in [1, 13]");
  }
  impl_->l = L.matrix();
  impl_->options = options;
  if (options.method == PropagationMethod::Pade) impl_->poles = pade_poles(options.pade_order);
}

Propagator::~Propagator() = default;
Propagator::Propagator(Propagator&&) noexcept = default;
Propagator& Propagator::operator=(Propagator&&) noexcept = default;

void Propagator::advance(Vector& v, double dt) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw DomainError("Propagator: dt must be finite and >= 0");
  if (dt == 0.0) return;
  if (impl_->options.method == PropagationMethod::Pade) {
    impl_->pade_advance(v, dt);
  } else {
    impl_->rk_advance(v, dt, 0.0);
  }
}

void Propagator::propagate(Vector v, std::span<const double> taus,
                           const std::function<void(std::size_t, double, const Vector&)>& observer) {
  validate_time_grid(taus);
  observer(0, taus[0], v);
  for (std::size_t i = 1; i < taus.size(); ++i) {
    const double dt = taus[i] - taus[i - 1];
    if (impl_->options.method == PropagationMethod::Pade) {
      impl_->pade_advance(v, dt);
    } else {
      impl_->rk_advance(v, dt, taus[i - 1]);
    }
    observer(i, taus[i], v);
  }
}

void validate_time_grid(std::span<const double> taus) {
  if (taus.empty()) throw DomainError("time grid is empty");
  if (taus[0] != 0.0) throw DomainError("time grid must start at 0");
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!std::isfinite(taus[i])) throw DomainError("time grid contains a non-finite value");
    if (i > 0 && !(taus[i] > taus[i - 1])) throw DomainError("time grid must be strictly increasing");
  }
}

std::vector<double> uniform_time_grid(double t_max, int points) {
  if (points < 2 || !(t_max > 0.0)) throw DomainError("uniform_time_grid: need t_max > 0 and points >= 2");
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = t_max * i / (points - 1);
  return out;
}

std::vector<double> default_time_grid() { return uniform_time_grid(20.0, 400); }

Trajectory evolve(const Liouvillian& L, const DensityMatrix& rho0, std::span<const double> taus,
                  const PropagationOptions& options) {
  if (!(rho0.space() == L.space())) throw DomainError("evolve: state and Liouvillian spaces differ");
  Trajectory out;
  out.times.assign(taus.begin(), taus.end());
  out.states.reserve(taus.size());
  Propagator prop(L, options);
  const int d = L.space().dim();
  prop.propagate(vectorize(rho0.matrix()), taus, [&](std::size_t, double, const Vector& v) {
    out.states.emplace_back(L.space(), unvectorize(v, d));
  });
  return out;
}

namespace {
// Diagonal of (a^n)' a^n: q (q-1) ... (q-n+1) on both atomic levels.
Eigen::VectorXd falling_factorial_diagonal(const HilbertSpace& space, int n) {
  Eigen::VectorXd diag(space.dim());
  for (Level l : {Level::Ground, Level::Metastable}) {
    for (int q = 0; q <= space.n_max(); ++q) {
      double f = 1.0;
      for (int k = 0; k < n; ++k) f *= std::max(0, q - k);
      diag(space.index(l, q)) = f;
    }
  }
  return diag;
}

double diagonal_trace(const Eigen::VectorXd& weights, const DenseMatrix& m) {
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) acc += weights(i) * m(i, i);
  return acc.real();
}
}  // namespace

CorrelationSeries regression_g2(const Liouvillian& L, const DensityMatrix& rho_s, int n,
                                std::span<const double> taus, const PropagationOptions& options) {
  if (n < 1) throw DomainError("regression_g2: photon-group size must be >= 1");
  const HilbertSpace& space = L.space();
  if (!(rho_s.space() == space)) throw DomainError("regression_g2: state and Liouvillian spaces differ");
  const int d = space.dim();

  const Eigen::VectorXd weight_n = falling_factorial_diagonal(space, n);
  const Eigen::VectorXd weight_2n = falling_factorial_diagonal(space, 2 * n);
  const double norm = diagonal_trace(weight_n, rho_s.matrix());
  if (!(norm > 1e-14)) {
    throw UndefinedCorrelatorError("regression_g2: no " + std::to_string(n) + "-photon population");
  }

  CorrelationSeries out;
  out.group_size = n;
  out.normalization = norm;
  out.equal_time = diagonal_trace(weight_2n, rho_s.matrix()) / (norm * norm);
  out.times.assign(taus.begin(), taus.end());
  out.values.reserve(taus.size());

  const SparseMatrix an = annihilation_power(space, n).matrix();
  const DenseMatrix jumped = an * rho_s.matrix() * SparseMatrix(an.adjoint());

  Propagator prop(L, options);
  prop.propagate(vectorize(jumped), taus, [&](std::size_t, double tau, const Vector& v) {
    Complex acc = 0.0;
    for (int i = 0; i < d; ++i) acc += weight_n(i) * v(i + static_cast<Eigen::Index>(i) * d);
    if (std::abs(acc.imag()) > 1e-8 * std::max(1.0, std::abs(acc.real()))) {
      throw SolverError("regression_g2: imaginary residue " + std::to_string(acc.imag()) +
                        " at tau = " + std::to_string(tau));
    }
    out.values.push_back(acc.real() / (norm * norm));
  });

  if (std::abs(out.values.front() - out.equal_time) > 1e-8 * std::abs(out.equal_time) + 1e-300) {
    throw SolverError("regression_g2: tau = 0 value disagrees with the equal-time correlator");
  }
  return out;
}

}  // namespace kerr2jc
