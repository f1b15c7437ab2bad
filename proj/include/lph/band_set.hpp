#pragma once

// Finite unions of disjoint closed intervals.

#include <stdexcept>
#include <vector>

namespace lph {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

class BandSet {
 public:
  BandSet() = default;
  /// Requires lo_i <= hi_i < lo_{i+1} with finite endpoints.
  explicit BandSet(std::vector<Interval> bands);

  /// Sorts, then merges intervals that overlap or are closer than `gap`.
  static BandSet merged(std::vector<Interval> bands, double gap = 0.0);

  const std::vector<Interval>& bands() const { return bands_; }
  bool empty() const { return bands_.empty(); }
  std::size_t size() const { return bands_.size(); }
  bool contains(double x) const;
  /// Distance from x to the set.
  double distance(double x) const;

  bool operator==(const BandSet&) const = default;

 private:
  std::vector<Interval> bands_;
};

/// Total length.
double measure_estimate(const BandSet& b);

/// Symmetric Hausdorff distance, exact from the endpoints. Throws for an
/// empty argument.
double hausdorff_dist(const BandSet& a, const BandSet& b);

}  // namespace lph
