#include "lph/band_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lph {

BandSet::BandSet(std::vector<Interval> bands) : bands_(std::move(bands)) {
  for (std::size_t i = 0; i < bands_.size(); ++i) {
    const Interval& b = bands_[i];
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi)) throw std::invalid_argument("band endpoints must be finite");
    if (b.lo > b.hi) throw std::invalid_argument("band " + std::to_string(i) + " has lo > hi");
    if (i > 0 && !(bands_[i - 1].hi < b.lo)) {
      throw std::invalid_argument("bands " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                  " are not sorted and disjoint");
    }
  }
}

BandSet BandSet::merged(std::vector<Interval> bands, double gap) {
  std::sort(bands.begin(), bands.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  std::vector<Interval> out;
  for (const Interval& b : bands) {
    if (!out.empty() && b.lo - out.back().hi <= gap) {
      out.back().hi = std::max(out.back().hi, b.hi);
    } else {
      out.push_back(b);
    }
  }
  return BandSet{std::move(out)};
}

bool BandSet::contains(double x) const { return distance(x) == 0.0; }

double BandSet::distance(double x) const {
  if (bands_.empty()) throw std::invalid_argument("distance to an empty band set");
  // first band whose upper end is >= x
  auto it = std::lower_bound(bands_.begin(), bands_.end(), x,
                             [](const Interval& b, double v) { return b.hi < v; });
  double best = INFINITY;
  if (it != bands_.end()) best = std::max(0.0, it->lo - x);
  if (it != bands_.begin()) best = std::min(best, x - std::prev(it)->hi);
  return best;
}

double measure_estimate(const BandSet& b) {
  double total = 0.0;
  for (const Interval& i : b.bands()) total += i.length();
  return total;
}

namespace {

// sup over a of dist(a, b): on each interval of a, dist(., b) is piecewise
// linear with interior maxima only at midpoints of the gaps of b.
double directed(const BandSet& a, const BandSet& b) {
  std::vector<double> mids;
  const auto& bb = b.bands();
  for (std::size_t i = 1; i < bb.size(); ++i) mids.push_back(0.5 * (bb[i - 1].hi + bb[i].lo));
  double worst = 0.0;
  for (const Interval& i : a.bands()) {
    worst = std::max({worst, b.distance(i.lo), b.distance(i.hi)});
    auto first = std::lower_bound(mids.begin(), mids.end(), i.lo);
    for (auto it = first; it != mids.end() && *it <= i.hi; ++it) worst = std::max(worst, b.distance(*it));
  }
  return worst;
}

}  // namespace

double hausdorff_dist(const BandSet& a, const BandSet& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("Hausdorff distance needs nonempty sets");
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace lph
