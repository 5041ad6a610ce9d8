#pragma once

#include "oscillade/combinatorics.hpp"
#include "oscillade/opcalculus.hpp"
#include "oscillade/operators.hpp"
#include "oscillade/oracle.hpp"
#include "oscillade/quadrature.hpp"
#include "oscillade/semigroup.hpp"

#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace oscillade {

/// i^power, exact for every integer power.
Complex quarter_turn(int power);

/// coefficient * i^quarter_turns * omega^{-omega_power} * e^{i frequency omega t}
///   * left * e^{tL} * right.
struct ExpansionTerm {
  Rational coefficient = 1;
  int quarter_turns = 0;
  int omega_power = 0;
  int frequency = 0;
  OperatorMatrix left;
  bool left_is_identity = false;
  std::shared_ptr<const Vector> right;
  std::string provenance;

  /// The t-independent factor coefficient * i^quarter_turns * omega^{-omega_power}.
  Complex scalar(double omega) const;
};

/// Sum of terms at time t. Terms sharing a right vector share one semigroup
/// application.
Vector evaluate_terms(std::span<const ExpansionTerm> terms, const SemigroupEvaluator& flow,
                      double omega, double t);

/// p_{r,s}(t) = sum_{d=max(s,1)}^{r} sum_{|k^d|=r-d} a_s^d i^{-r}
///              N_{k_{d-s+1}}^{k_d} e^{tL} F_{d-s} u0,   p_{0,0}(t) = e^{tL} u0.
struct PCoefficient {
  int r = 0;
  int s = 0;
  std::vector<ExpansionTerm> terms;

  Vector evaluate(const SemigroupEvaluator& flow, double t) const;
};

PCoefficient build_p_coefficient(int r, int s, WordBuilder& words, const Vector& u0);
PCoefficient build_p_coefficient(int r, int s, const OperatorMatrix& generator,
                                 const OperatorMatrix& alpha, const Vector& u0);

/// U^{[n]}(t) = p_{0,0}(t) + sum_{r=1}^{n} omega^{-r} sum_{s=0}^{r} e^{i s omega t} p_{r,s}(t).
class Approximant {
 public:
  Approximant(int n, double omega, SemigroupPtr flow, std::vector<PCoefficient> coefficients);

  static Approximant build(int n, double omega, WordBuilder& words, SemigroupPtr flow,
                           const Vector& u0);

  int order() const { return n_; }
  double omega() const { return omega_; }
  const PCoefficient& p(int r, int s) const;
  Vector evaluate(double t) const;

 private:
  int n_;
  double omega_;
  SemigroupPtr flow_;
  std::map<std::pair<int, int>, PCoefficient> coefficients_;
};

Vector evaluate_approximant(const Approximant& approximant, double t);

/// Every p_{r,s}, r <= n_max, sampled once at fixed times. Since p_{r,s} does
/// not depend on omega, approximants for any (n, omega) are then cheap
/// recombinations of the stored samples.
class CoefficientSamples {
 public:
  CoefficientSamples(int n_max, WordBuilder& words, const SemigroupEvaluator& flow,
                     const Vector& u0, std::vector<double> times);

  int max_order() const { return n_max_; }
  const std::vector<double>& times() const { return times_; }
  const Vector& value(int r, int s, std::size_t time_index) const;
  /// U^{[n]} at every stored time.
  std::vector<Vector> approximant(int n, double omega) const;

 private:
  int n_max_;
  std::vector<double> times_;
  std::map<std::pair<int, int>, std::vector<Vector>> values_;
};

/// S_n^d(t) = sum_{|k^d|=0}^{n-d} (i omega)^{-d-|k^d|} sum_{l=0}^{d} a_{d-l}^d
///            e^{(d-l) i omega t} N_{k_{l+1}}^{k_d} e^{tL} F_l u0.
class SeriesS {
 public:
  SeriesS(int d, int n, double omega, SemigroupPtr flow, std::vector<ExpansionTerm> terms);

  int depth() const { return d_; }
  int order() const { return n_; }
  const std::vector<ExpansionTerm>& terms() const { return terms_; }
  Vector operator()(double t) const;

 private:
  int d_;
  int n_;
  double omega_;
  SemigroupPtr flow_;
  std::vector<ExpansionTerm> terms_;
};

/// Throws std::invalid_argument unless n >= d >= 1.
SeriesS build_series_S(int d, int n, WordBuilder& words, SemigroupPtr flow, const Vector& u0,
                       double omega);

/// E_n^d(t) = (i omega)^{-n} sum_{|k^d|=n-d+1} sum_{l=0}^{d-1} b_{d-l}^d
///              int_0^t e^{(t-s)L} N_{k_{l+1}}^{k_d} e^{sL} e^{(d-l) i omega s} F_l u0 ds
///          + int_0^t e^{(t-s)L} alpha e^{i omega s} E_n^{d-1}(s) ds,   E_n^0 = 0,
/// with every integral taken panel by panel on one time mesh.
class RemainderE {
 public:
  RemainderE(int d, int n, WordBuilder& words, SemigroupPtr flow, const Vector& u0, double omega,
             double t_star, const QuadratureSpec& spec = {});

  int depth() const { return d_; }
  const TimeMesh& mesh() const { return mesh_; }
  Vector operator()(double t) const;
  Vector operator()(const MeshPoint& p) const;

 private:
  int d_;
  TimeMesh mesh_;
  std::shared_ptr<DuhamelIntegral> integral_;
  std::shared_ptr<RemainderE> inner_;
};

/// Depth is limited to d <= 2: the nested quadrature costs panels * points^d.
RemainderE build_error_E(int d, int n, WordBuilder& words, SemigroupPtr flow, const Vector& u0,
                         double omega, double t_star = 1.0, const QuadratureSpec& spec = {});

/// T^d e^{tL} u0 = S_n^d(t) + E_n^d(t).
struct SeriesDecomposition {
  int d;
  int n;
  SeriesS S;
  RemainderE E;

  Vector operator()(double t) const { return S(t) + E(t); }
};

SeriesDecomposition decompose(int d, int n, WordBuilder& words, SemigroupPtr flow,
                              const Vector& u0, double omega, double t_star = 1.0,
                              const QuadratureSpec& spec = {});

}  // namespace oscillade
