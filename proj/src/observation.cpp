#include "dtrust/observation.hpp"

#include <string>

#include "dtrust/error.hpp"

namespace dtrust::observation {

namespace {

void check_interval(const Interval& iv, const char* name) {
  if (!(iv.lo >= 0.0 && iv.hi <= 1.0 && iv.lo <= iv.hi)) {
    throw InvalidArgument(std::string(name) + " interval must satisfy 0 <= lo <= hi <= 1");
  }
}

}  // namespace

TrustObservationModel::TrustObservationModel()
    : TrustObservationModel({0.35, 0.75}, {0.25, 0.65}) {}

TrustObservationModel::TrustObservationModel(Interval legit, Interval malicious)
    : legit_(legit), malicious_(malicious) {
  check_interval(legit_, "legitimate");
  check_interval(malicious_, "malicious");
  if (!(legit_.midpoint() > 0.5)) {
    throw InvalidArgument("legitimate observations need mean > 1/2 (E_L > 0)");
  }
  if (!(malicious_.midpoint() < 0.5)) {
    throw InvalidArgument("malicious observations need mean < 1/2 (E_M < 0)");
  }
}

double sample_alpha(const TrustObservationModel& model, graph::Role sender, Rng& rng) {
  const Interval& iv = model.interval_for(sender);
  if (iv.lo == iv.hi) return iv.lo;
  return rng.uniform(iv.lo, iv.hi);
}

Margins margins(const TrustObservationModel& model) {
  return {model.legit_interval().midpoint() - 0.5, model.malicious_interval().midpoint() - 0.5};
}

}  // namespace dtrust::observation
