#include "causeway/situation.hpp"

#include "causeway/error.hpp"

namespace causeway {

CausalSituation::CausalSituation(CausalModel model, Valuation sigma)
    : model_(std::move(model)), sigma_(std::move(sigma)) {
  if (!model_.is_consistent(sigma_))
    throw Error("valuation is not consistent with the model's mechanisms");
  state_.resize(static_cast<std::size_t>(model_.num_vars()));
  for (int i = 0; i < model_.num_vars(); ++i)
    state_[static_cast<std::size_t>(i)] = sigma_.at(model_.var_at(i));
}

CausalSituation CausalSituation::from_exogenous(CausalModel model, const Valuation& exo) {
  Valuation sigma = model.evaluate(exo);
  return CausalSituation(std::move(model), std::move(sigma));
}

}  // namespace causeway
