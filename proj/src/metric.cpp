#include "krlip/metric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>

#include "krlip/error.hpp"

namespace krlip {

namespace {

std::vector<std::string> default_ids(std::size_t n, std::vector<std::string> ids) {
  if (ids.empty()) {
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  }
  if (ids.size() != n) {
    throw Error(ErrorCode::SizeMismatch, "expected " + std::to_string(n) + " point ids, got " +
                                             std::to_string(ids.size()));
  }
  return ids;
}

// Dense bitset over point indices, used by the cover routines.
class PointSet {
 public:
  explicit PointSet(std::size_t n) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }
  std::size_t count_and(const PointSet& other) const {
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) c += std::popcount(words_[k] & other.words_[k]);
    return c;
  }
  void subtract(const PointSet& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~other.words_[k];
  }

 private:
  std::vector<std::uint64_t> words_;
};

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(std::size_t n, std::vector<double> dist,
                                     std::vector<std::string> ids)
    : n_(n), dist_(std::move(dist)), ids_(std::move(ids)) {
  for (std::size_t i = 0; i < n_; ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate point id '" + ids_[i] + "'");
    }
  }
  diam_ = dist_.empty() ? 0.0 : *std::max_element(dist_.begin(), dist_.end());
}

FiniteMetricSpace FiniteMetricSpace::validate(const std::vector<std::vector<double>>& dist,
                                              std::vector<std::string> ids) {
  const std::size_t n = dist.size();
  if (n == 0) throw Error(ErrorCode::NotSquare, "empty matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) {
      throw Error(ErrorCode::NotSquare, "row " + std::to_string(i) + " has " +
                                            std::to_string(dist[i].size()) + " entries, expected " +
                                            std::to_string(n));
    }
  }
  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist[i][j];
      if (!std::isfinite(d) || d < 0.0) {
        throw Error(ErrorCode::NegativeEntry, "entry (" + std::to_string(i) + "," +
                                                  std::to_string(j) + ") is not a nonnegative number");
      }
      flat[i * n + j] = d;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (flat[i * n + i] > kMetricTolerance) {
      throw Error(ErrorCode::InvalidArgument, "diagonal entry " + std::to_string(i) + " is nonzero");
    }
    flat[i * n + i] = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(flat[i * n + j] - flat[j * n + i]) > kMetricTolerance) {
        throw Error(ErrorCode::AsymmetricMatrix,
                    "dist(" + std::to_string(i) + "," + std::to_string(j) + ") != dist(" +
                        std::to_string(j) + "," + std::to_string(i) + ")");
      }
      if (flat[i * n + j] <= kMetricTolerance) {
        throw Error(ErrorCode::ZeroOffDiagonal,
                    "dist(" + std::to_string(i) + "," + std::to_string(j) + ") is zero");
      }
      flat[j * n + i] = flat[i * n + j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const double direct = flat[i * n + k];
      for (std::size_t j = 0; j < n; ++j) {
        if (direct > flat[i * n + j] + flat[j * n + k] + kMetricTolerance) {
          std::ostringstream os;
          os << "triple (" << i << "," << k << ") via " << j << ": " << direct << " > "
             << flat[i * n + j] << " + " << flat[j * n + k];
          throw Error(ErrorCode::TriangleViolation, os.str());
        }
      }
    }
  }
  return FiniteMetricSpace(n, std::move(flat), default_ids(n, std::move(ids)));
}

FiniteMetricSpace FiniteMetricSpace::euclidean(const std::vector<std::vector<double>>& coords,
                                               std::vector<std::string> ids) {
  const std::size_t n = coords.size();
  if (n == 0) throw Error(ErrorCode::NotSquare, "no coordinates");
  const std::size_t dim = coords[0].size();
  for (const auto& c : coords) {
    if (c.size() != dim) throw Error(ErrorCode::SizeMismatch, "ragged coordinate rows");
    for (double v : c) {
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
    }
  }
  std::vector<double> flat(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double d = coords[i][k] - coords[j][k];
        s += d * d;
      }
      // 1-d distances stay exact differences.
      const double d = dim == 1 ? std::abs(coords[i][0] - coords[j][0]) : std::sqrt(s);
      if (d <= kMetricTolerance) {
        throw Error(ErrorCode::ZeroOffDiagonal, "points " + std::to_string(i) + " and " +
                                                    std::to_string(j) + " coincide");
      }
      flat[i * n + j] = d;
      flat[j * n + i] = d;
    }
  }
  return FiniteMetricSpace(n, std::move(flat), default_ids(n, std::move(ids)));
}

std::optional<std::size_t> FiniteMetricSpace::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<double>> FiniteMetricSpace::matrix() const {
  std::vector<std::vector<double>> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

std::vector<double> FiniteMetricSpace::realized_distances() const {
  std::vector<double> d;
  d.reserve(n_ * (n_ - 1) / 2);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) d.push_back((*this)(i, j));
  }
  std::sort(d.begin(), d.end());
  std::vector<double> out;
  for (double v : d) {
    if (out.empty() || v - out.back() > kMetricTolerance) out.push_back(v);
  }
  return out;
}

FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& dist,
                                  std::vector<std::string> ids) {
  return FiniteMetricSpace::validate(dist, std::move(ids));
}

FiniteMetricSpace snowflake(const FiniteMetricSpace& space, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  std::vector<double> flat(space.dist_);
  if (alpha != 1.0) {
    for (double& d : flat) d = d == 0.0 ? 0.0 : std::pow(d, alpha);
  }
  return FiniteMetricSpace(space.n_, std::move(flat), space.ids_);
}

MetricMeasureSpace::MetricMeasureSpace(FiniteMetricSpace space, std::vector<double> weight)
    : space_(std::move(space)), weight_(std::move(weight)) {
  const std::size_t n = space_.size();
  if (weight_.size() != n) {
    throw Error(ErrorCode::SizeMismatch, "weights have " + std::to_string(weight_.size()) +
                                             " entries for " + std::to_string(n) + " points");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(weight_[i] > 0.0) || !std::isfinite(weight_[i])) {
      throw Error(ErrorCode::InvalidArgument,
                  "weight of point '" + space_.id(i) + "' must be strictly positive");
    }
  }
  sorted_dist_.resize(n);
  cumulative_mass_.resize(n);
  std::vector<std::size_t> order(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto r = space_.row(x);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return r[a] < r[b]; });
    auto& sd = sorted_dist_[x];
    auto& cm = cumulative_mass_[x];
    sd.resize(n);
    cm.resize(n);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      sd[k] = r[order[k]];
      acc += weight_[order[k]];
      cm[k] = acc;
    }
  }
}

MetricMeasureSpace MetricMeasureSpace::uniform(FiniteMetricSpace space) {
  const std::size_t n = space.size();
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  return MetricMeasureSpace(std::move(space), std::move(w));
}

double MetricMeasureSpace::total_mass() const noexcept {
  return std::accumulate(weight_.begin(), weight_.end(), 0.0);
}

double MetricMeasureSpace::ball_mass(std::size_t x, double r) const {
  const auto& sd = sorted_dist_.at(x);
  const auto it = std::upper_bound(sd.begin(), sd.end(), r + kMetricTolerance);
  if (it == sd.begin()) return 0.0;
  return cumulative_mass_[x][static_cast<std::size_t>(it - sd.begin()) - 1];
}

double covering_radius(const FiniteMetricSpace& space, std::span<const std::size_t> subset) {
  if (subset.empty()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t x = 0; x < space.size(); ++x) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a : subset) best = std::min(best, space(x, a));
    worst = std::max(worst, best);
  }
  return worst;
}

NetHierarchy build_net_hierarchy(const FiniteMetricSpace& space, int depth, double r0) {
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "depth must be nonnegative");
  if (!(r0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "r0 must be positive");
  const std::size_t n = space.size();
  NetHierarchy net;
  std::vector<std::size_t> centers;
  // Distance from each point to the current center set.
  std::vector<double> gap(n, std::numeric_limits<double>::infinity());
  for (int level = 0; level <= depth; ++level) {
    const double radius = std::ldexp(r0, -level);
    for (;;) {
      std::size_t pick = n;
      for (std::size_t x = 0; x < n; ++x) {
        if (gap[x] <= radius) continue;
        if (pick == n || gap[x] > gap[pick]) pick = x;
      }
      if (pick == n) break;
      centers.push_back(pick);
      for (std::size_t x = 0; x < n; ++x) gap[x] = std::min(gap[x], space(x, pick));
    }
    std::vector<std::size_t> sorted(centers);
    std::sort(sorted.begin(), sorted.end());
    net.levels.push_back(std::move(sorted));
    net.radii.push_back(radius);
  }
  return net;
}

int estimate_doubling_constant(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty space");
  if (n == 1) return 1;
  const std::vector<double> radii = space.realized_distances();
  int worst = 1;
  std::vector<PointSet> half_balls(n, PointSet(n));
  for (double r : radii) {
    const double half = 0.5 * r;
    for (std::size_t c = 0; c < n; ++c) {
      PointSet s(n);
      for (std::size_t y = 0; y < n; ++y) {
        if (space(c, y) <= half + kMetricTolerance) s.set(y);
      }
      half_balls[c] = std::move(s);
    }
    for (std::size_t x = 0; x < n; ++x) {
      PointSet uncovered(n);
      for (std::size_t y = 0; y < n; ++y) {
        if (space(x, y) <= r + kMetricTolerance) uncovered.set(y);
      }
      int used = 0;
      while (uncovered.any()) {
        // Greedy set cover: the half-ball covering the most, lowest index on ties.
        std::size_t best = 0;
        std::size_t best_gain = 0;
        for (std::size_t c = 0; c < n; ++c) {
          const std::size_t gain = half_balls[c].count_and(uncovered);
          if (gain > best_gain) {
            best_gain = gain;
            best = c;
          }
        }
        uncovered.subtract(half_balls[best]);
        ++used;
      }
      worst = std::max(worst, used);
    }
  }
  return worst;
}

double estimate_measure_doubling(const MetricMeasureSpace& mm) {
  const std::size_t n = mm.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty space");
  double worst = 1.0;
  for (double r : mm.space().realized_distances()) {
    for (std::size_t x = 0; x < n; ++x) worst = std::max(worst, mm.ball_mass(x, 2.0 * r) / mm.ball_mass(x, r));
  }
  return worst;
}

LowerMassBound fit_lower_mass_bound(const MetricMeasureSpace& mm) {
  const auto& space = mm.space();
  const std::size_t n = space.size();
  if (n < 2) throw Error(ErrorCode::DegenerateFit, "need at least two points");
  // mu(B_r(x)) is a step function of r, so the binding cases of
  // mu(B_r(x)) >= C r^Q on (0, diam] are the left limits at each realized
  // distance: the mass of the previous closed ball against the next radius.
  struct Sample {
    double r;
    double mass;
  };
  std::vector<Sample> samples;
  bool several_scales = false;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<double> d(space.row(x).begin(), space.row(x).end());
    std::sort(d.begin(), d.end());
    double previous = 0.0;
    for (double r : d) {
      if (r <= previous + kMetricTolerance) continue;
      samples.push_back({r, mm.ball_mass(x, previous)});
      if (previous > 0.0) several_scales = true;
      previous = r;
    }
  }
  LowerMassBound out;
  out.samples = samples.size();
  double mean_t = 0.0;
  double mean_y = 0.0;
  for (const auto& s : samples) {
    mean_t += std::log(s.r);
    mean_y += std::log(s.mass);
  }
  mean_t /= static_cast<double>(samples.size());
  mean_y /= static_cast<double>(samples.size());
  double stt = 0.0;
  double sty = 0.0;
  for (const auto& s : samples) {
    stt += (std::log(s.r) - mean_t) * (std::log(s.r) - mean_t);
    sty += (std::log(s.r) - mean_t) * (std::log(s.mass) - mean_y);
  }
  // A single realized scale leaves the slope free; Q = 0 is then certified
  // by C = smallest point mass.
  out.Q = (!several_scales || stt <= 0.0) ? 0.0 : std::max(0.0, sty / stt);
  double log_c = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) log_c = std::min(log_c, std::log(s.mass) - out.Q * std::log(s.r));
  out.C = std::exp(log_c);
  // exp/log rounding may overshoot by an ulp; shrink until every pair certifies.
  for (const auto& s : samples) {
    while (out.C * std::pow(s.r, out.Q) > s.mass) out.C = std::nextafter(out.C, 0.0);
  }
  return out;
}

}  // namespace krlip
