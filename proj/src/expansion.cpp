#include "oscillade/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>
#include <string>

namespace oscillade {

namespace {

constexpr Complex kI{0.0, 1.0};

// F_l u0 for every prefix of k that a builder asks for, computed once.
class RightVectors {
 public:
  RightVectors(WordBuilder& words, const Vector& u0) : words_(words), u0_(u0) {}

  std::pair<std::shared_ptr<const Vector>, std::string> get(int level, const MultiIndex& k) {
    const std::vector<int> prefix = k.slice(1, level);
    auto it = cache_.find(prefix);
    if (it == cache_.end()) {
      const OperatorWord f = words_.f_function(level, k);
      auto value = level == 0 ? std::make_shared<const Vector>(u0_)
                              : std::make_shared<const Vector>(f.value * u0_);
      it = cache_.emplace(prefix, std::make_pair(std::move(value), f.provenance)).first;
    }
    return it->second;
  }

 private:
  WordBuilder& words_;
  const Vector& u0_;
  std::map<std::vector<int>, std::pair<std::shared_ptr<const Vector>, std::string>> cache_;
};

ExpansionTerm make_term(Rational coefficient, int quarter_turns, int omega_power, int frequency,
                        const OperatorWord& left,
                        const std::pair<std::shared_ptr<const Vector>, std::string>& right) {
  ExpansionTerm term{.coefficient = std::move(coefficient),
                     .quarter_turns = quarter_turns,
                     .omega_power = omega_power,
                     .frequency = frequency,
                     .left = left.value,
                     .left_is_identity = left.provenance == "Id",
                     .right = right.first,
                     .provenance = ""};
  term.provenance = term.coefficient.str() + " i^" + std::to_string(quarter_turns) + " w^-" +
                    std::to_string(omega_power) + " e^{" + std::to_string(frequency) +
                    "iwt} " + left.provenance + " e^{tL} " + right.second + " u0";
  return term;
}

void require_order(int d, int n) {
  if (d < 1) throw std::invalid_argument("nesting depth must be at least 1");
  if (n < d) {
    throw std::invalid_argument("order n=" + std::to_string(n) + " below depth d=" +
                                std::to_string(d));
  }
}

}  // namespace

Complex quarter_turn(int power) {
  switch (((power % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

Complex ExpansionTerm::scalar(double omega) const {
  return coefficient.convert_to<double>() * quarter_turn(quarter_turns) *
         std::pow(omega, -omega_power);
}

Vector evaluate_terms(std::span<const ExpansionTerm> terms, const SemigroupEvaluator& flow,
                      double omega, double t) {
  Vector out = Vector::Zero(flow.size());
  std::vector<std::pair<const Vector*, Vector>> flowed;
  for (const auto& term : terms) {
    if (term.coefficient == 0) continue;
    const Vector* key = term.right.get();
    auto it = std::find_if(flowed.begin(), flowed.end(), [&](const auto& e) { return e.first == key; });
    if (it == flowed.end()) {
      flowed.emplace_back(key, flow.apply(t, *key));
      it = std::prev(flowed.end());
    }
    Complex factor = term.scalar(omega);
    if (term.frequency != 0) factor *= std::exp(kI * (term.frequency * omega * t));
    if (term.left_is_identity) {
      out += factor * it->second;
    } else {
      out.noalias() += factor * (term.left.entries() * it->second);
    }
  }
  return out;
}

Vector PCoefficient::evaluate(const SemigroupEvaluator& flow, double t) const {
  return evaluate_terms(terms, flow, 1.0, t);
}

PCoefficient build_p_coefficient(int r, int s, WordBuilder& words, const Vector& u0) {
  if (r < 0 || s < 0 || s > r) {
    throw std::out_of_range("p coefficient index out of range: r=" + std::to_string(r) +
                            ", s=" + std::to_string(s));
  }
  if (u0.size() != words.generator().size()) throw std::invalid_argument("u0 dimension mismatch");
  PCoefficient p{r, s, {}};
  RightVectors rights(words, u0);
  if (r == 0) {
    const OperatorWord id{OperatorMatrix::identity(words.generator().grid()), "Id"};
    p.terms.push_back(make_term(1, 0, 0, 0, id, rights.get(0, MultiIndex{0})));
    return p;
  }
  for (int d = std::max(s, 1); d <= r; ++d) {
    for (const MultiIndex& k : enumerate_multi_indices(d, r - d)) {
      const OperatorWord left = words.n_operator(k, d - s + 1, d);
      p.terms.push_back(make_term(words.rule().a(s, d, k), -r, 0, 0, left, rights.get(d - s, k)));
    }
  }
  return p;
}

PCoefficient build_p_coefficient(int r, int s, const OperatorMatrix& generator,
                                 const OperatorMatrix& alpha, const Vector& u0) {
  WordBuilder words(generator, alpha);
  return build_p_coefficient(r, s, words, u0);
}

Approximant::Approximant(int n, double omega, SemigroupPtr flow,
                         std::vector<PCoefficient> coefficients)
    : n_(n), omega_(omega), flow_(std::move(flow)) {
  if (n < 0) throw std::invalid_argument("approximant order must be non-negative");
  for (auto& p : coefficients) {
    const auto key = std::make_pair(p.r, p.s);
    coefficients_.emplace(key, std::move(p));
  }
  for (int r = 0; r <= n_; ++r) {
    for (int s = 0; s <= r; ++s) (void)p(r, s);
  }
}

Approximant Approximant::build(int n, double omega, WordBuilder& words, SemigroupPtr flow,
                               const Vector& u0) {
  std::vector<PCoefficient> coefficients;
  for (int r = 0; r <= n; ++r) {
    for (int s = 0; s <= r; ++s) coefficients.push_back(build_p_coefficient(r, s, words, u0));
  }
  return Approximant(n, omega, std::move(flow), std::move(coefficients));
}

const PCoefficient& Approximant::p(int r, int s) const {
  auto it = coefficients_.find({r, s});
  if (it == coefficients_.end()) {
    throw std::out_of_range("approximant lacks p_{" + std::to_string(r) + "," +
                            std::to_string(s) + "}");
  }
  return it->second;
}

Vector Approximant::evaluate(double t) const {
  Vector out = p(0, 0).evaluate(*flow_, t);
  for (int r = 1; r <= n_; ++r) {
    Vector level = Vector::Zero(out.size());
    for (int s = 0; s <= r; ++s) {
      level += std::exp(kI * (s * omega_ * t)) * p(r, s).evaluate(*flow_, t);
    }
    out += std::pow(omega_, -r) * level;
  }
  return out;
}

Vector evaluate_approximant(const Approximant& approximant, double t) {
  return approximant.evaluate(t);
}

CoefficientSamples::CoefficientSamples(int n_max, WordBuilder& words,
                                       const SemigroupEvaluator& flow, const Vector& u0,
                                       std::vector<double> times)
    : n_max_(n_max), times_(std::move(times)) {
  for (int r = 0; r <= n_max_; ++r) {
    for (int s = 0; s <= r; ++s) {
      const PCoefficient p = build_p_coefficient(r, s, words, u0);
      std::vector<Vector> samples;
      samples.reserve(times_.size());
      for (double t : times_) samples.push_back(p.evaluate(flow, t));
      values_.emplace(std::make_pair(r, s), std::move(samples));
    }
  }
}

const Vector& CoefficientSamples::value(int r, int s, std::size_t time_index) const {
  auto it = values_.find({r, s});
  if (it == values_.end()) throw std::out_of_range("coefficient not sampled");
  return it->second.at(time_index);
}

std::vector<Vector> CoefficientSamples::approximant(int n, double omega) const {
  if (n < 0 || n > n_max_) throw std::out_of_range("approximant order beyond sampled range");
  std::vector<Vector> out;
  out.reserve(times_.size());
  for (std::size_t i = 0; i < times_.size(); ++i) {
    Vector u = value(0, 0, i);
    for (int r = 1; r <= n; ++r) {
      Vector level = Vector::Zero(u.size());
      for (int s = 0; s <= r; ++s) level += std::exp(kI * (s * omega * times_[i])) * value(r, s, i);
      u += std::pow(omega, -r) * level;
    }
    out.push_back(std::move(u));
  }
  return out;
}

SeriesS::SeriesS(int d, int n, double omega, SemigroupPtr flow, std::vector<ExpansionTerm> terms)
    : d_(d), n_(n), omega_(omega), flow_(std::move(flow)), terms_(std::move(terms)) {}

Vector SeriesS::operator()(double t) const { return evaluate_terms(terms_, *flow_, omega_, t); }

SeriesS build_series_S(int d, int n, WordBuilder& words, SemigroupPtr flow, const Vector& u0,
                       double omega) {
  require_order(d, n);
  RightVectors rights(words, u0);
  std::vector<ExpansionTerm> terms;
  for (int m = 0; m <= n - d; ++m) {
    for (const MultiIndex& k : enumerate_multi_indices(d, m)) {
      for (int l = 0; l <= d; ++l) {
        const OperatorWord left = words.n_operator(k, l + 1, d);
        terms.push_back(make_term(words.rule().a(d - l, d, k), -(d + m), d + m, d - l, left,
                                  rights.get(l, k)));
      }
    }
  }
  return SeriesS(d, n, omega, std::move(flow), std::move(terms));
}

RemainderE::RemainderE(int d, int n, WordBuilder& words, SemigroupPtr flow, const Vector& u0,
                       double omega, double t_star, const QuadratureSpec& spec)
    : d_(d), mesh_(TimeMesh::resolving(t_star, omega, spec, 200)) {
  require_order(d, n);
  if (d > 2) throw std::invalid_argument("remainder E_n^d is implemented for d <= 2 only");
  if (d > 1) {
    inner_ = std::make_shared<RemainderE>(d - 1, n, words, flow, u0, omega, t_star, spec);
  }

  RightVectors rights(words, u0);
  auto terms = std::make_shared<std::vector<ExpansionTerm>>();
  for (const MultiIndex& k : enumerate_multi_indices(d, n - d + 1)) {
    for (int l = 0; l < d; ++l) {
      const OperatorWord left = words.n_operator(k, l + 1, d);
      terms->push_back(make_term(words.rule().b(d - l, d, k), -n, n, d - l, left, rights.get(l, k)));
    }
  }

  // One flow path per distinct right vector, shared by the terms using it.
  auto paths = std::make_shared<std::vector<std::pair<const Vector*, FlowPath>>>();
  for (const auto& term : *terms) {
    const Vector* key = term.right.get();
    bool known = false;
    for (const auto& entry : *paths) known = known || entry.first == key;
    if (!known) paths->emplace_back(key, FlowPath(flow, mesh_, *key));
  }

  const OperatorMatrix alpha = words.multiplier();
  auto integrand = [terms, paths, alpha, inner = inner_, mesh = mesh_, omega](const MeshPoint& p) {
    const double tau = time_of(mesh, p);
    Vector value = Vector::Zero(alpha.size());
    for (const auto& term : *terms) {
      if (term.coefficient == 0) continue;
      const Vector* key = term.right.get();
      const auto& path =
          std::find_if(paths->begin(), paths->end(), [&](const auto& e) { return e.first == key; })
              ->second;
      const Complex factor = term.scalar(omega) * std::exp(kI * (term.frequency * omega * tau));
      value.noalias() += factor * (term.left.entries() * path(p));
    }
    if (inner) value += std::exp(kI * (omega * tau)) * (alpha * (*inner)(p));
    return value;
  };
  integral_ = std::make_shared<DuhamelIntegral>(flow, mesh_, integrand, spec.points_per_panel);
}

Vector RemainderE::operator()(const MeshPoint& p) const { return (*integral_)(p); }

Vector RemainderE::operator()(double t) const { return (*integral_)(locate(mesh_, t)); }

RemainderE build_error_E(int d, int n, WordBuilder& words, SemigroupPtr flow, const Vector& u0,
                         double omega, double t_star, const QuadratureSpec& spec) {
  return RemainderE(d, n, words, std::move(flow), u0, omega, t_star, spec);
}

SeriesDecomposition decompose(int d, int n, WordBuilder& words, SemigroupPtr flow,
                              const Vector& u0, double omega, double t_star,
                              const QuadratureSpec& spec) {
  return {d, n, build_series_S(d, n, words, flow, u0, omega),
          build_error_E(d, n, words, flow, u0, omega, t_star, spec)};
}

}  // namespace oscillade
