#pragma once

#include "dtrust/graph.hpp"
#include "dtrust/random.hpp"

namespace dtrust::observation {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double midpoint() const noexcept { return 0.5 * (lo + hi); }
};

/// Per-role uniform distributions of the trust observation alpha in [0, 1].
///
/// Observations about legitimate senders must have mean above 1/2 and
/// observations about malicious senders mean below 1/2.
class TrustObservationModel {
 public:
  // Default: legit senders U[0.35, 0.75], malicious senders U[0.25, 0.65].
  TrustObservationModel();
  // Throws InvalidArgument when the intervals violate the mean or range constraints.
  TrustObservationModel(Interval legit, Interval malicious);

  const Interval& legit_interval() const noexcept { return legit_; }
  const Interval& malicious_interval() const noexcept { return malicious_; }
  const Interval& interval_for(graph::Role sender) const noexcept {
    return sender == graph::Role::Legitimate ? legit_ : malicious_;
  }

  friend bool operator==(const TrustObservationModel&, const TrustObservationModel&) = default;

 private:
  Interval legit_;
  Interval malicious_;
};

struct Margins {
  double legit = 0.0;      // E_L > 0
  double malicious = 0.0;  // E_M < 0
};

double sample_alpha(const TrustObservationModel& model, graph::Role sender, Rng& rng);

// Expected observation minus 1/2, per sender role.
Margins margins(const TrustObservationModel& model);

}  // namespace dtrust::observation
