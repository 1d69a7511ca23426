#include "volnotify/policy.hpp"

#include "volnotify/errors.hpp"

namespace volnotify {

namespace {

class SnPolicy final : public Policy {
public:
    explicit SnPolicy(SnPlan plan) : plan_(std::move(plan)) {}

    std::string name() const override { return "sn"; }
    int volunteers() const override { return plan_.sparse.volunteers(); }
    PolicyDecision decide(const DecisionContext& ctx, Rng&) const override { return sn_decide(plan_, ctx.t, ctx.s); }

private:
    SnPlan plan_;
};

class SdnPolicy final : public Policy {
public:
    explicit SdnPolicy(SdnPlan plan) : plan_(std::move(plan)) {}

    std::string name() const override { return "sdn"; }
    int volunteers() const override { return plan_.x_star.volunteers(); }
    PolicyDecision decide(const DecisionContext& ctx, Rng&) const override { return sdn_decide(plan_, ctx.t, ctx.s); }

private:
    SdnPlan plan_;
};

class HeuristicPolicy final : public Policy {
public:
    HeuristicPolicy(HeuristicSpec spec, Instance planning, std::string name)
        : spec_(std::move(spec)), planning_(std::move(planning)), name_(std::move(name)) {}

    std::string name() const override { return name_; }
    int volunteers() const override { return planning_.volunteers(); }
    bool uses_beliefs() const override { return spec_.kind != HeuristicSpec::Kind::follow_ex_ante; }

    PolicyDecision decide(const DecisionContext& ctx, Rng& rng) const override {
        if (uses_beliefs() && ctx.beliefs == nullptr) {
            throw PreconditionError("policy '" + name_ + "' needs activity beliefs");
        }
        if (ctx.beliefs == nullptr) {
            const BeliefState fresh(planning_.volunteers());
            return heuristic_decide(spec_, fresh, planning_, ctx.t, ctx.s, rng);
        }
        return heuristic_decide(spec_, *ctx.beliefs, planning_, ctx.t, ctx.s, rng);
    }

private:
    HeuristicSpec spec_;
    Instance planning_;
    std::string name_;
};

} // namespace

std::unique_ptr<Policy> make_sn_policy(SnPlan plan) { return std::make_unique<SnPolicy>(std::move(plan)); }

std::unique_ptr<Policy> make_sdn_policy(SdnPlan plan) { return std::make_unique<SdnPolicy>(std::move(plan)); }

std::unique_ptr<Policy> make_heuristic_policy(HeuristicSpec spec, Instance planning, std::string name) {
    if (spec.kind == HeuristicSpec::Kind::follow_ex_ante) require_shape(planning, spec.x_star);
    return std::make_unique<HeuristicPolicy>(std::move(spec), std::move(planning), std::move(name));
}

} // namespace volnotify
