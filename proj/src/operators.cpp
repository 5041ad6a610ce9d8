#include "oscillade/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oscillade {

OperatorMatrix::OperatorMatrix(GridPtr grid, Matrix entries, std::string label,
                               std::shared_ptr<const Eigenbasis> basis)
    : grid_(std::move(grid)),
      entries_(std::make_shared<const Matrix>(std::move(entries))),
      label_(std::move(label)),
      basis_(std::move(basis)) {
  if (!grid_) throw std::invalid_argument("operator without grid");
  const Matrix& e = *entries_;
  if (e.rows() != e.cols() || e.rows() != grid_->size()) {
    throw std::invalid_argument("dimension mismatch: operator is " +
                                std::to_string(e.rows()) + "x" +
                                std::to_string(e.cols()) + ", grid has " +
                                std::to_string(grid_->size()) + " points");
  }
}

OperatorMatrix OperatorMatrix::identity(GridPtr grid) {
  const int m = grid->size();
  return {std::move(grid), Matrix::Identity(m, m), "Id"};
}

OperatorMatrix OperatorMatrix::zero(GridPtr grid) {
  const int m = grid->size();
  return {std::move(grid), Matrix::Zero(m, m), "0"};
}

bool OperatorMatrix::is_diagonal() const {
  const Matrix& e = *entries_;
  for (Eigen::Index j = 0; j < e.cols(); ++j) {
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
      if (i != j && e(i, j) != Complex{}) return false;
    }
  }
  return true;
}

OperatorMatrix::OperatorMatrix(GridPtr grid, std::shared_ptr<const Matrix> entries,
                               std::string label, std::shared_ptr<const Eigenbasis> basis)
    : grid_(std::move(grid)),
      entries_(std::move(entries)),
      label_(std::move(label)),
      basis_(std::move(basis)) {}

OperatorMatrix OperatorMatrix::relabeled(std::string label) const {
  return {grid_, entries_, std::move(label), basis_};
}

void require_compatible(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dimension mismatch between '" + a.label() + "' and '" +
                                b.label() + "'");
  }
  if (a.grid() != b.grid()) {
    throw std::invalid_argument("operators '" + a.label() + "' and '" + b.label() +
                                "' live on different grids");
  }
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_compatible(a, b);
  return {a.grid(), a.entries() * b.entries(), a.label() + " " + b.label()};
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_compatible(a, b);
  return {a.grid(), a.entries() + b.entries(), a.label() + " + " + b.label()};
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_compatible(a, b);
  return {a.grid(), a.entries() - b.entries(), a.label() + " - " + b.label()};
}

OperatorMatrix operator*(Complex scale, const OperatorMatrix& a) {
  return {a.grid(), scale * a.entries(), a.label()};
}

Vector operator*(const OperatorMatrix& a, const Vector& v) {
  if (v.size() != a.size()) throw std::invalid_argument("dimension mismatch in matrix-vector product");
  return a.entries() * v;
}

Vector sample(const std::function<Complex(double)>& f, const Grid& grid) {
  Vector out(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const Complex value = f(grid.points()[i]);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw std::invalid_argument("non-finite sample at x = " + std::to_string(grid.points()[i]));
    }
    out[i] = value;
  }
  return out;
}

OperatorMatrix multiplication_operator(const std::function<Complex(double)>& f, GridPtr grid,
                                       std::string label) {
  const Vector diagonal = sample(f, *grid);
  Matrix entries = diagonal.asDiagonal();
  return {std::move(grid), std::move(entries), std::move(label)};
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_compatible(a, b);
  Matrix entries = a.entries() * b.entries();
  entries.noalias() -= b.entries() * a.entries();
  return {a.grid(), std::move(entries), "[" + a.label() + ", " + b.label() + "]"};
}

OperatorMatrix ad_power(const OperatorMatrix& generator, const OperatorMatrix& a, int k) {
  if (k < 0) throw std::invalid_argument("ad_power: negative power");
  require_compatible(generator, a);
  OperatorMatrix current = a;
  for (int i = 1; i <= k; ++i) current = commutator(generator, current);
  return current.relabeled("ad^" + std::to_string(k) + "(" + a.label() + ")");
}

Eigen::VectorXd fd_weights(double x0, std::span<const double> nodes, int order) {
  const int n = static_cast<int>(nodes.size());
  if (n <= order) throw std::invalid_argument("stencil too short for derivative order");
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, order + 1);
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
        }
        c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k) c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
      c(j, 0) = c4 * c(j, 0) / c3;
    }
    c1 = c2;
  }
  return c.col(order);
}

namespace {

constexpr double pi = std::numbers::pi;

// Orthonormal sine basis on the cell-centred dirichlet grid: column k-1 of
// `vectors` samples sin(k*pi*(x - lower)/length).
std::shared_ptr<Eigenbasis> sine_basis(const Grid& grid) {
  const int m = grid.size();
  Eigen::MatrixXd s(m, m);
  for (int k = 1; k <= m; ++k) {
    const double scale = k < m ? std::sqrt(2.0 / m) : std::sqrt(1.0 / m);
    for (int j = 0; j < m; ++j) s(k - 1, j) = scale * std::sin(k * pi * (j + 0.5) / m);
  }
  auto basis = std::make_shared<Eigenbasis>();
  basis->inverse = s.cast<Complex>();
  basis->vectors = s.transpose().cast<Complex>();
  return basis;
}

std::vector<double> sine_wavenumbers(const Grid& grid) {
  std::vector<double> out(grid.size());
  for (int k = 1; k <= grid.size(); ++k) out[k - 1] = k * pi / grid.length();
  return out;
}

// Unitary discrete Fourier basis on the periodic grid.
std::shared_ptr<Eigenbasis> fourier_basis(const Grid& grid, std::vector<int>& modes) {
  const int m = grid.size();
  modes.resize(m);
  for (int q = 0; q < m; ++q) modes[q] = q <= m / 2 ? q : q - m;
  auto basis = std::make_shared<Eigenbasis>();
  basis->vectors.resize(m, m);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m));
  for (int q = 0; q < m; ++q) {
    for (int j = 0; j < m; ++j) {
      const double phase = 2.0 * pi * static_cast<double>(modes[q]) * j / m;
      basis->vectors(j, q) = norm * Complex(std::cos(phase), std::sin(phase));
    }
  }
  basis->inverse = basis->vectors.adjoint();
  return basis;
}

Complex fourier_symbol(int mode, int order, const Grid& grid) {
  const double kappa = 2.0 * pi * mode / grid.length();
  const bool nyquist = grid.size() % 2 == 0 && std::abs(mode) == grid.size() / 2;
  switch (order) {
    case 0:
      return 1.0;
    case 1:
      return nyquist ? Complex{} : Complex(0.0, kappa);
    default:
      return -kappa * kappa;
  }
}

struct SampledTerm {
  int order;
  Vector coefficient;
  bool constant;
};

std::vector<SampledTerm> sample_terms(std::span<const DerivativeTerm> terms, const Grid& grid) {
  std::vector<SampledTerm> out;
  for (const auto& term : terms) {
    if (term.order < 0 || term.order > 2) {
      throw std::invalid_argument("unsupported derivative order " + std::to_string(term.order));
    }
    Vector c = sample(term.coefficient, grid);
    const bool constant = (c.array() == c[0]).all();
    out.push_back({term.order, std::move(c), constant});
  }
  return out;
}

std::string describe(const std::vector<SampledTerm>& terms) {
  std::string label = "L[";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) label += " + ";
    label += "a" + std::to_string(terms[i].order) + " d^" + std::to_string(terms[i].order);
  }
  return label + "]";
}

OperatorMatrix spectral_operator(const std::vector<SampledTerm>& terms, const GridPtr& grid) {
  const int m = grid->size();
  std::shared_ptr<Eigenbasis> basis;
  std::vector<Vector> symbols(3, Vector::Zero(m));
  if (grid->boundary() == Boundary::dirichlet) {
    for (const auto& term : terms) {
      if (term.order == 1) throw std::invalid_argument("bc incompatible with stencil");
    }
    basis = sine_basis(*grid);
    const auto kappa = sine_wavenumbers(*grid);
    for (int q = 0; q < m; ++q) {
      symbols[0][q] = 1.0;
      symbols[2][q] = -kappa[q] * kappa[q];
    }
  } else if (grid->boundary() == Boundary::periodic) {
    std::vector<int> modes;
    basis = fourier_basis(*grid, modes);
    for (int q = 0; q < m; ++q) {
      for (int p = 0; p <= 2; ++p) symbols[p][q] = fourier_symbol(modes[q], p, *grid);
    }
  } else {
    throw std::invalid_argument("bc incompatible with stencil");
  }

  bool all_constant = true;
  for (const auto& term : terms) all_constant = all_constant && term.constant;

  Matrix entries = Matrix::Zero(m, m);
  if (all_constant) {
    basis->values = Vector::Zero(m);
    for (const auto& term : terms) basis->values += term.coefficient[0] * symbols[term.order];
    entries = basis->vectors * basis->values.asDiagonal() * basis->inverse;
    return {grid, std::move(entries), describe(terms), std::move(basis)};
  }
  for (const auto& term : terms) {
    const Matrix derivative = basis->vectors * symbols[term.order].asDiagonal() * basis->inverse;
    entries += term.coefficient.asDiagonal() * derivative;
  }
  return {grid, std::move(entries), describe(terms)};
}

OperatorMatrix finite_difference_operator(const std::vector<SampledTerm>& terms,
                                          const GridPtr& grid) {
  const int m = grid->size();
  const double h = grid->spacing();
  const Boundary bc = grid->boundary();
  Matrix entries = Matrix::Zero(m, m);

  for (const auto& term : terms) {
    if (term.order == 0) {
      entries += term.coefficient.asDiagonal();
      continue;
    }
    for (int i = 0; i < m; ++i) {
      // Stencil as (offset from i, column, sign) triples.
      std::vector<int> offsets;
      if (bc == Boundary::none && (i < 2 || i > m - 3)) {
        const int width = std::min(6, m);
        const int first = i < 2 ? -i : (m - width) - i;
        for (int s = 0; s < width; ++s) offsets.push_back(first + s);
      } else {
        offsets = {-2, -1, 0, 1, 2};
      }
      std::vector<double> nodes;
      for (int off : offsets) nodes.push_back(off * h);
      const Eigen::VectorXd w = fd_weights(0.0, nodes, term.order);
      for (std::size_t s = 0; s < offsets.size(); ++s) {
        int col = i + offsets[s];
        double sign = 1.0;
        if (col < 0 || col >= m) {
          if (bc == Boundary::periodic) {
            col = (col % m + m) % m;
          } else {
            // Odd reflection across the dirichlet boundary at half a cell.
            col = col < 0 ? -col - 1 : 2 * m - col - 1;
            sign = -1.0;
          }
        }
        entries(i, col) += term.coefficient[i] * sign * w[static_cast<Eigen::Index>(s)];
      }
    }
  }
  return {grid, std::move(entries), describe(terms)};
}

}  // namespace

OperatorMatrix discretize_operator(std::span<const DerivativeTerm> terms, GridPtr grid,
                                   Scheme scheme) {
  const auto sampled = sample_terms(terms, *grid);
  if (scheme == Scheme::spectral) return spectral_operator(sampled, grid);
  return finite_difference_operator(sampled, grid);
}

}  // namespace oscillade
