#pragma once

#include <functional>
#include <memory>

#include "ccg/agent.hpp"
#include "ccg/observation.hpp"

namespace ccg {

// ---------------------------------------------------------------------------
// Reference agents forming a strength ladder: uniform random, one-ply
// greedy over a linear heuristic, and determinized flat Monte Carlo.
// ---------------------------------------------------------------------------

// Linear state evaluation, deliberately synergy-blind. Defaults are
// symmetric so mirror states score 0.
struct HeuristicWeights {
    double own_health = 1.0;
    double opp_health = -1.0;
    double own_board_attack = 1.0;
    double own_board_health = 1.0;
    double opp_board_attack = -1.0;
    double opp_board_health = -1.0;
    double hand_size = 0.5;

    bool operator==(const HeuristicWeights&) const = default;
};

// Dot product of the weights with (own hero health, opponent hero
// health, own/opponent board attack and health sums, own hand size).
// Board sums use the stored (pre-aura) attack and current health.
double heuristic_score(const Observation& obs, const HeuristicWeights& w = {});

// Same features read straight off a full state, from `seat`'s side.
// Equal to heuristic_score(observe(state, seat), w) by construction.
double heuristic_score_state(const GameState& state, Seat seat, const HeuristicWeights& w = {});

// Determinizes once with the given seed, applies every option, returns
// the one whose successor scores highest; ties break to the lowest
// option index.
Action greedy_get_move(const Observation& obs, std::shared_ptr<const CardSet> set,
                       std::uint64_t determinize_seed, const HeuristicWeights& w = {});

using RolloutPolicy = std::function<Action(const GameState&, const std::vector<Action>&, Rng&)>;

Action uniform_random_policy(const GameState& state, const std::vector<Action>& options, Rng& rng);

// One-ply heuristic argmax over the options, ties to the lowest index.
// As a rollout policy this turns each rollout into a deterministic
// "both sides play greedy" continuation, so sample variance comes from
// the hidden-information draw alone. The baseline flat MC agent runs
// on this; uniform random remains the operation default.
Action greedy_rollout_policy(const GameState& state, const std::vector<Action>& options, Rng& rng);

struct FlatMcParams {
    int depth_cap = 30;  // actions per rollout before heuristic leaf evaluation
    HeuristicWeights weights;
    RolloutPolicy policy;       // empty = uniform random
    double time_cap_ms = 0.0;   // 0 = no cap; otherwise rounds stop when exceeded
    double leaf_scale = 0.05;   // logistic slope for depth-cap leaf values
};

// Flat Monte Carlo over the options: k rollout rounds, each on a fresh
// determinization that every option shares (paired comparison), scored
// 1 / 0.5 / 0 at terminals and by a logistic squash of the heuristic
// at the depth cap. The option with the highest mean wins, ties to the
// lowest index. Round seeds derive from (seed, round), so results are
// order-independent, and an early time-cap stop still compares every
// option on the same rounds.
Action flat_mc_get_move(const Observation& obs, std::shared_ptr<const CardSet> set, int k,
                        std::uint64_t seed, const FlatMcParams& params = {});

// ---------------------------------------------------------------------------
// Agent wrappers
// ---------------------------------------------------------------------------

class RandomAgent : public Agent {
public:
    explicit RandomAgent(std::uint64_t seed = 1) : rng_(seed) {}
    void initialize_game(const GameContext& ctx) override;
    Action get_move(const Observation& obs) override;
    std::string name() const override { return "random"; }

private:
    Rng rng_;
};

class GreedyAgent : public Agent {
public:
    explicit GreedyAgent(HeuristicWeights w = {}) : weights_(w) {}
    void initialize_game(const GameContext& ctx) override;
    Action get_move(const Observation& obs) override;
    std::string name() const override { return "greedy"; }

private:
    HeuristicWeights weights_;
    GameContext ctx_;
    bool has_ctx_ = false;
};

class FlatMcAgent : public Agent {
public:
    explicit FlatMcAgent(int k = 16, int depth_cap = 30, HeuristicWeights w = {})
        : k_(k), depth_cap_(depth_cap), weights_(w) {}
    void initialize_game(const GameContext& ctx) override;
    Action get_move(const Observation& obs) override;
    std::string name() const override { return "flatmc"; }

private:
    int k_;
    int depth_cap_;
    HeuristicWeights weights_;
    GameContext ctx_;
    bool has_ctx_ = false;
    int budget_turn_ = -1;
    int moves_this_turn_ = 0;
    double spent_this_turn_ms_ = 0.0;
};

}  // namespace ccg
