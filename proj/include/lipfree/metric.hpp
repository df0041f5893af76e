#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lipfree/errors.hpp"
#include "lipfree/rational.hpp"

namespace lipfree {

using RationalMatrix = std::vector<std::vector<Rational>>;
using PointSet = std::vector<std::size_t>;

// Unvalidated space data as read from a document.
struct RawSpace {
  std::vector<std::string> labels;
  std::string base_label;
  RationalMatrix dist;
};

enum class ViolationKind { asymmetry, zero_offdiag, negative, nonzero_diag, triangle, dup_label };

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::asymmetry: return "asymmetry";
    case ViolationKind::zero_offdiag: return "zero-offdiag";
    case ViolationKind::negative: return "negative";
    case ViolationKind::nonzero_diag: return "nonzero-diag";
    case ViolationKind::triangle: return "triangle";
    case ViolationKind::dup_label: return "dup-label";
  }
  return "unknown";
}

// `indices` holds a pair (i, j) or, for triangle violations, the triple
// (i, j, k) with d(i,k) > d(i,j) + d(j,k).
struct Violation {
  ViolationKind kind;
  std::vector<std::size_t> indices;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  bool ok = false;
  std::vector<Violation> violations;
  bool truncated = false;  // more violations existed than the cap allowed
  Rational theta;          // minimal off-diagonal distance
  Rational diameter;       // maximal distance

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

inline constexpr std::size_t kDefaultViolationCap = 100;

// Checks every metric axiom on the raw data. Structural problems (non-square
// matrix, unknown base label) are not violations and throw InputError.
inline ValidationReport validate_space(const RawSpace& raw,
                                       std::size_t violation_cap = kDefaultViolationCap) {
  const std::size_t n = raw.labels.size();
  if (raw.dist.size() != n) {
    throw InputError("distance matrix has " + std::to_string(raw.dist.size()) +
                     " rows for " + std::to_string(n) + " labels");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (raw.dist[i].size() != n) {
      throw InputError("distance matrix row " + std::to_string(i) + " has " +
                       std::to_string(raw.dist[i].size()) + " entries, expected " +
                       std::to_string(n));
    }
  }
  if (std::find(raw.labels.begin(), raw.labels.end(), raw.base_label) == raw.labels.end()) {
    throw InputError("base label '" + raw.base_label + "' is not a point label");
  }

  std::vector<Violation> found;
  const auto& d = raw.dist;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i][i] < 0) {
      found.push_back({ViolationKind::negative, {i, i}});
    } else if (d[i][i] != 0) {
      found.push_back({ViolationKind::nonzero_diag, {i, i}});
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (raw.labels[i] == raw.labels[j]) found.push_back({ViolationKind::dup_label, {i, j}});
      if (d[i][j] != d[j][i]) found.push_back({ViolationKind::asymmetry, {i, j}});
      if (d[i][j] < 0 || d[j][i] < 0) {
        found.push_back({ViolationKind::negative, {i, j}});
      } else if (d[i][j] == 0 || d[j][i] == 0) {
        found.push_back({ViolationKind::zero_offdiag, {i, j}});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = i + 1; k < n; ++k) {
        if (k == j) continue;
        if (d[i][k] > d[i][j] + d[j][k]) found.push_back({ViolationKind::triangle, {i, j, k}});
      }
    }
  }

  std::stable_sort(found.begin(), found.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.indices, a.kind) < std::tie(b.indices, b.kind);
  });

  ValidationReport report;
  report.ok = found.empty();
  report.truncated = found.size() > violation_cap;
  if (report.truncated) found.resize(violation_cap);
  report.violations = std::move(found);

  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (first || d[i][j] < report.theta) report.theta = d[i][j];
      if (first || d[i][j] > report.diameter) report.diameter = d[i][j];
      first = false;
    }
  }
  return report;
}

// A validated finite pointed metric space. Immutable once built.
class FiniteMetricSpace {
 public:
  // Throws InputError when `raw` is malformed or violates a metric axiom.
  static FiniteMetricSpace from_raw(RawSpace raw) {
    const ValidationReport report = validate_space(raw);
    if (!report.ok) {
      const Violation& v = report.violations.front();
      std::string where;
      for (std::size_t idx : v.indices) {
        where += (where.empty() ? "" : ",") + raw.labels[idx];
      }
      throw InputError(std::string("not a metric space: ") + to_string(v.kind) + " at (" +
                       where + ")");
    }
    const auto base = static_cast<std::size_t>(
        std::find(raw.labels.begin(), raw.labels.end(), raw.base_label) - raw.labels.begin());
    return FiniteMetricSpace(std::move(raw.labels), base, std::move(raw.dist), report.theta,
                             report.diameter);
  }

  std::size_t size() const { return labels_.size(); }
  std::size_t base() const { return base_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const RationalMatrix& matrix() const { return dist_; }
  const Rational& d(std::size_t i, std::size_t j) const { return dist_[i][j]; }
  const Rational& theta() const { return theta_; }
  const Rational& diameter() const { return diameter_; }

  std::optional<std::size_t> index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  RawSpace to_raw() const { return RawSpace{labels_, labels_[base_], dist_}; }

 private:
  FiniteMetricSpace(std::vector<std::string> labels, std::size_t base, RationalMatrix dist,
                    Rational theta, Rational diameter)
      : labels_(std::move(labels)),
        base_(base),
        dist_(std::move(dist)),
        theta_(std::move(theta)),
        diameter_(std::move(diameter)) {}

  std::vector<std::string> labels_;
  std::size_t base_;
  RationalMatrix dist_;
  Rational theta_;
  Rational diameter_;
};

namespace detail {

inline void check_index(const FiniteMetricSpace& space, std::size_t i) {
  if (i >= space.size()) {
    throw std::invalid_argument("point index " + std::to_string(i) + " out of range");
  }
}

}  // namespace detail

// d(s,z) + d(t,z) - d(s,t); zero exactly on the segment [s,t].
inline Rational segment_excess(const FiniteMetricSpace& space, std::size_t s, std::size_t t,
                               std::size_t z) {
  return space.d(s, z) + space.d(t, z) - space.d(s, t);
}

// Metric segment {z : d(s,z) + d(t,z) = d(s,t)}, sorted by index.
inline PointSet segment(const FiniteMetricSpace& space, std::size_t s, std::size_t t) {
  detail::check_index(space, s);
  detail::check_index(space, t);
  if (s == t) throw std::invalid_argument("segment endpoints must differ");
  PointSet out;
  for (std::size_t z = 0; z < space.size(); ++z) {
    if (segment_excess(space, s, t, z) == 0) out.push_back(z);
  }
  return out;
}

// Relaxed segment {z : d(s,z) + d(t,z) < d(s,t) + eps}; strict inequality.
inline PointSet segment_eps(const FiniteMetricSpace& space, std::size_t s, std::size_t t,
                            const Rational& eps) {
  detail::check_index(space, s);
  detail::check_index(space, t);
  if (s == t) throw std::invalid_argument("segment endpoints must differ");
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  PointSet out;
  for (std::size_t z = 0; z < space.size(); ++z) {
    if (segment_excess(space, s, t, z) < eps) out.push_back(z);
  }
  return out;
}

}  // namespace lipfree
