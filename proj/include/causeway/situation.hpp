#ifndef CAUSEWAY_SITUATION_HPP
#define CAUSEWAY_SITUATION_HPP

#include <utility>
#include <vector>

#include "causeway/model.hpp"

namespace causeway {

// A model paired with a consistent total valuation: the setting actual-cause
// queries are asked in.
class CausalSituation {
 public:
  CausalSituation(CausalModel model, Valuation sigma);

  static CausalSituation from_exogenous(CausalModel model, const Valuation& exo);

  const CausalModel& model() const { return model_; }
  const Valuation& sigma() const { return sigma_; }
  Value actual(const std::string& var) const { return sigma_.at(var); }

  // sigma by dense variable index.
  const std::vector<Value>& sigma_state() const { return state_; }

 private:
  CausalModel model_;
  Valuation sigma_;
  std::vector<Value> state_;
};

}  // namespace causeway

#endif
