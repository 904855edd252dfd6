#include "ccg/agents_baseline.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "ccg/errors.hpp"

namespace ccg {

namespace {

double squash(double score, double scale) { return 1.0 / (1.0 + std::exp(-score * scale)); }

std::shared_ptr<const CardSet> builtin_set_ptr() {
    // Non-owning view of the static set.
    return {std::shared_ptr<const CardSet>(), &builtin_card_set()};
}

}  // namespace

double heuristic_score(const Observation& obs, const HeuristicWeights& w) {
    double own_attack = 0, own_health = 0, opp_attack = 0, opp_health = 0;
    for (const MinionView& v : obs.own.board) {
        own_attack += v.minion.base_attack;
        own_health += v.minion.current_health;
    }
    for (const MinionView& v : obs.opponent.board) {
        opp_attack += v.minion.base_attack;
        opp_health += v.minion.current_health;
    }
    return w.own_health * obs.own.hero_health + w.opp_health * obs.opponent.hero_health +
           w.own_board_attack * own_attack + w.own_board_health * own_health +
           w.opp_board_attack * opp_attack + w.opp_board_health * opp_health +
           w.hand_size * static_cast<double>(obs.own.hand.size());
}

double heuristic_score_state(const GameState& state, Seat seat, const HeuristicWeights& w) {
    const PlayerState& own = state.player(seat);
    const PlayerState& opp = state.player(other(seat));
    double own_attack = 0, own_health = 0, opp_attack = 0, opp_health = 0;
    for (const MinionInstance& m : own.board) {
        own_attack += m.base_attack;
        own_health += m.current_health;
    }
    for (const MinionInstance& m : opp.board) {
        opp_attack += m.base_attack;
        opp_health += m.current_health;
    }
    return w.own_health * own.hero_health + w.opp_health * opp.hero_health +
           w.own_board_attack * own_attack + w.own_board_health * own_health +
           w.opp_board_attack * opp_attack + w.opp_board_health * opp_health +
           w.hand_size * static_cast<double>(own.hand.size());
}

Action greedy_get_move(const Observation& obs, std::shared_ptr<const CardSet> set,
                       std::uint64_t determinize_seed, const HeuristicWeights& w) {
    if (obs.options.empty()) throw IllegalAction("greedy_get_move needs at least one option");
    const GameState base = determinize(obs, std::move(set), determinize_seed);

    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < obs.options.size(); ++i) {
        GameState next = base;
        apply_action_in_place(next, obs.options[i]);
        const double score = heuristic_score_state(next, obs.viewer, w);
        if (score > best_score) {
            best_score = score;
            best = i;
        }
    }
    return obs.options[best];
}

Action uniform_random_policy(const GameState&, const std::vector<Action>& options, Rng& rng) {
    return options[rng.uniform(static_cast<std::uint32_t>(options.size()))];
}

Action greedy_rollout_policy(const GameState& state, const std::vector<Action>& options, Rng&) {
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < options.size(); ++i) {
        GameState next = state;
        apply_action_unchecked(next, options[i]);
        const double score = heuristic_score_state(next, state.active_seat);
        if (score > best_score) {
            best_score = score;
            best = i;
        }
    }
    return options[best];
}

namespace {

// Plays a determinized state to the end or the depth cap; returns the
// value from `seat`'s perspective.
double rollout_value(GameState state, Seat seat, const FlatMcParams& params, Rng& rng) {
    const RolloutPolicy& policy = params.policy ? params.policy : uniform_random_policy;
    for (int depth = 0; depth < params.depth_cap; ++depth) {
        const std::optional<GameResult> result = game_result(state);
        if (result) {
            if (result->is_draw()) return 0.5;
            return *result->winner == seat ? 1.0 : 0.0;
        }
        const std::vector<Action> options = legal_actions(state);
        apply_action_unchecked(state, policy(state, options, rng));
    }
    const std::optional<GameResult> result = game_result(state);
    if (result) {
        if (result->is_draw()) return 0.5;
        return *result->winner == seat ? 1.0 : 0.0;
    }
    return squash(heuristic_score_state(state, seat, params.weights), params.leaf_scale);
}

}  // namespace

Action flat_mc_get_move(const Observation& obs, std::shared_ptr<const CardSet> set, int k,
                        std::uint64_t seed, const FlatMcParams& params) {
    if (obs.options.empty()) throw IllegalAction("flat_mc_get_move needs at least one option");
    if (k < 1) throw ConfigError("flat_mc_get_move needs k >= 1");
    const std::size_t n = obs.options.size();
    if (n == 1) return obs.options[0];

    const auto start = std::chrono::steady_clock::now();
    auto elapsed_ms = [&start]() {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    };

    std::vector<double> totals(n, 0.0);
    for (int round = 0; round < k; ++round) {
        // Every option sees the same hidden-information sample and the
        // same policy stream within a round, so per-round differences
        // are caused by the options alone.
        const GameState base = determinize(
            obs, set, derive_seed(seed, {static_cast<std::uint64_t>(round), 0xDu}));
        const std::uint64_t stream_seed =
            derive_seed(seed, {static_cast<std::uint64_t>(round), 0xFu});
        for (std::size_t i = 0; i < n; ++i) {
            GameState state = base;
            apply_action_unchecked(state, obs.options[i]);
            Rng stream(stream_seed);
            totals[i] += rollout_value(std::move(state), obs.viewer, params, stream);
        }
        if (params.time_cap_ms > 0.0 && elapsed_ms() > params.time_cap_ms) break;
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (totals[i] > totals[best]) best = i;
    }
    return obs.options[best];
}

// ---------------------------------------------------------------------------
// Agent wrappers
// ---------------------------------------------------------------------------

void RandomAgent::initialize_game(const GameContext& ctx) {
    rng_ = Rng(derive_seed(ctx.seed, {0x7a9dull, static_cast<std::uint64_t>(seat_index(ctx.seat))}));
}

Action RandomAgent::get_move(const Observation& obs) {
    if (obs.options.empty()) return Action::end_turn();
    return obs.options[rng_.uniform(static_cast<std::uint32_t>(obs.options.size()))];
}

void GreedyAgent::initialize_game(const GameContext& ctx) {
    ctx_ = ctx;
    has_ctx_ = true;
}

Action GreedyAgent::get_move(const Observation& obs) {
    std::shared_ptr<const CardSet> set = has_ctx_ && ctx_.set ? ctx_.set : builtin_set_ptr();
    // One determinization per turn: every call within a turn reuses the
    // same hidden-content sample.
    const std::uint64_t seed =
        derive_seed(has_ctx_ ? ctx_.seed : 1, {0x92eeull, static_cast<std::uint64_t>(seat_index(obs.viewer)),
                                               static_cast<std::uint64_t>(obs.turn_number)});
    return greedy_get_move(obs, std::move(set), seed, weights_);
}

void FlatMcAgent::initialize_game(const GameContext& ctx) {
    ctx_ = ctx;
    has_ctx_ = true;
    budget_turn_ = -1;
    moves_this_turn_ = 0;
    spent_this_turn_ms_ = 0.0;
}

Action FlatMcAgent::get_move(const Observation& obs) {
    if (obs.turn_number != budget_turn_) {
        budget_turn_ = obs.turn_number;
        moves_this_turn_ = 0;
        spent_this_turn_ms_ = 0.0;
    }
    FlatMcParams params;
    params.depth_cap = depth_cap_;
    params.weights = weights_;
    params.policy = greedy_rollout_policy;
    if (has_ctx_) {
        // Leave room for the rest of the turn: spend at most half of
        // what remains of the per-turn pool on this call.
        const double remaining = ctx_.config.time_budget_ms - spent_this_turn_ms_;
        params.time_cap_ms = std::max(1.0, remaining * 0.5);
    }

    const std::uint64_t seed =
        derive_seed(has_ctx_ ? ctx_.seed : 1,
                    {0xf1a7ull, static_cast<std::uint64_t>(seat_index(obs.viewer)),
                     static_cast<std::uint64_t>(obs.turn_number),
                     static_cast<std::uint64_t>(moves_this_turn_)});
    moves_this_turn_ += 1;

    std::shared_ptr<const CardSet> set = has_ctx_ && ctx_.set ? ctx_.set : builtin_set_ptr();
    const auto start = std::chrono::steady_clock::now();
    const Action choice = flat_mc_get_move(obs, std::move(set), k_, seed, params);
    spent_this_turn_ms_ +=
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return choice;
}

}  // namespace ccg
