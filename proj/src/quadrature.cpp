#include "oscillade/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace oscillade {

namespace {

GaussRule make_legendre(int points) {
  if (points < 1) throw std::invalid_argument("Gauss rule needs at least one point");
  GaussRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  for (int i = 0; i < points; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double derivative = 1.0;
    for (int iteration = 0; iteration < 100; ++iteration) {
      double p0 = 1.0;
      double p1 = x;
      for (int n = 2; n <= points; ++n) {
        const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      if (points == 1) {
        p1 = x;
        p0 = 1.0;
      }
      derivative = points * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // Map from [-1, 1] to [0, 1], ascending.
    rule.nodes[points - 1 - i] = 0.5 * (x + 1.0);
    rule.weights[points - 1 - i] = 1.0 / ((1.0 - x * x) * derivative * derivative);
  }
  return rule;
}

}  // namespace

const GaussRule& GaussRule::legendre(int points) {
  static std::mutex mutex;
  static std::map<int, GaussRule> rules;
  std::lock_guard lock(mutex);
  auto it = rules.find(points);
  if (it == rules.end()) it = rules.emplace(points, make_legendre(points)).first;
  return it->second;
}

double panel_width_limit(double horizon, double frequency, const QuadratureSpec& spec) {
  if (spec.panels_per_period < 1) throw std::invalid_argument("panels_per_period must be positive");
  double limit = horizon / 16.0;
  if (frequency > 0.0) {
    limit = std::min(limit, 2.0 * std::numbers::pi / (frequency * spec.panels_per_period));
  }
  return limit;
}

TimeMesh TimeMesh::resolving(double horizon, double frequency, const QuadratureSpec& spec,
                             int multiple_of) {
  if (!(horizon > 0.0)) throw std::invalid_argument("time mesh needs a positive horizon");
  const double limit = panel_width_limit(horizon, frequency, spec);
  int panels = static_cast<int>(std::ceil(horizon / limit - 1e-9));
  multiple_of = std::max(1, multiple_of);
  panels = ((panels + multiple_of - 1) / multiple_of) * multiple_of;
  return {horizon, panels};
}

MeshPoint locate(const TimeMesh& mesh, double t) {
  if (!(t >= 0.0) || t > mesh.horizon * (1.0 + 1e-12)) {
    throw std::out_of_range("time " + std::to_string(t) + " outside [0, " +
                            std::to_string(mesh.horizon) + "]");
  }
  const double h = mesh.width();
  int panel = static_cast<int>(std::floor(t / h));
  panel = std::clamp(panel, 0, mesh.panels - 1);
  double fraction = (t - panel * h) / h;
  fraction = std::clamp(fraction, 0.0, 1.0);
  if (fraction < 1e-13) fraction = 0.0;
  if (fraction > 1.0 - 1e-13) fraction = 1.0;
  return {panel, fraction};
}

double time_of(const TimeMesh& mesh, const MeshPoint& p) {
  return (p.panel + p.fraction) * mesh.width();
}

FlowPath::FlowPath(SemigroupPtr flow, TimeMesh mesh, const Vector& start)
    : flow_(std::move(flow)), mesh_(mesh) {
  nodes_.reserve(static_cast<std::size_t>(mesh_.panels) + 1);
  nodes_.push_back(start);
  for (int j = 0; j < mesh_.panels; ++j) nodes_.push_back(flow_->apply(mesh_.width(), nodes_.back()));
}

Vector FlowPath::operator()(const MeshPoint& p) const {
  if (p.fraction == 0.0) return nodes_[static_cast<std::size_t>(p.panel)];
  if (p.fraction == 1.0) return nodes_[static_cast<std::size_t>(p.panel) + 1];
  return flow_->apply(p.fraction * mesh_.width(), nodes_[static_cast<std::size_t>(p.panel)]);
}

DuhamelIntegral::DuhamelIntegral(SemigroupPtr flow, TimeMesh mesh, MeshFunction integrand,
                                 int points_per_panel)
    : flow_(std::move(flow)),
      mesh_(mesh),
      integrand_(std::move(integrand)),
      rule_(&GaussRule::legendre(points_per_panel)) {
  const double h = mesh_.width();
  nodes_.reserve(static_cast<std::size_t>(mesh_.panels) + 1);
  nodes_.push_back(Vector::Zero(flow_->size()));
  for (int j = 0; j < mesh_.panels; ++j) {
    Vector next = flow_->apply(h, nodes_.back());
    for (std::size_t q = 0; q < rule_->nodes.size(); ++q) {
      const double c = rule_->nodes[q];
      next += (rule_->weights[q] * h) * flow_->apply(h * (1.0 - c), integrand_({j, c}));
    }
    nodes_.push_back(std::move(next));
  }
}

Vector DuhamelIntegral::operator()(const MeshPoint& p) const {
  if (p.fraction == 0.0) return nodes_[static_cast<std::size_t>(p.panel)];
  if (p.fraction == 1.0) return nodes_[static_cast<std::size_t>(p.panel) + 1];
  const double s = p.fraction * mesh_.width();
  Vector value = flow_->apply(s, nodes_[static_cast<std::size_t>(p.panel)]);
  for (std::size_t q = 0; q < rule_->nodes.size(); ++q) {
    const double c = rule_->nodes[q];
    value += (rule_->weights[q] * s) *
             flow_->apply(s * (1.0 - c), integrand_({p.panel, p.fraction * c}));
  }
  return value;
}

SampledPath::SampledPath(double horizon, std::vector<Vector> samples)
    : horizon_(horizon), samples_(std::move(samples)) {
  if (samples_.size() < 4) throw std::invalid_argument("sampled path needs at least four samples");
}

Vector SampledPath::operator()(double t) const {
  const int n = static_cast<int>(samples_.size());
  const double dt = spacing();
  const double position = std::clamp(t / dt, 0.0, static_cast<double>(n - 1));
  const int nearest = static_cast<int>(std::lround(position));
  if (std::abs(position - nearest) < 1e-12) return samples_[static_cast<std::size_t>(nearest)];
  const int first = std::clamp(static_cast<int>(std::floor(position)) - 1, 0, n - 4);
  Vector value = Vector::Zero(samples_.front().size());
  for (int a = 0; a < 4; ++a) {
    double weight = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (b != a) weight *= (position - (first + b)) / static_cast<double>(a - b);
    }
    value += weight * samples_[static_cast<std::size_t>(first + a)];
  }
  return value;
}

}  // namespace oscillade
