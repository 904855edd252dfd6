#include "ccg/agent.hpp"

#include <algorithm>
#include <chrono>

#include "ccg/errors.hpp"

namespace ccg {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

GameResult forfeit(Seat loser, int turn) {
    GameResult r;
    r.winner = other(loser);
    r.reason = GameResult::Reason::Forfeit;
    r.final_turn = turn;
    return r;
}

}  // namespace

GameRecord play_game(Agent& first, Agent& second, const DeckSpec& deck_first,
                     const DeckSpec& deck_second, std::shared_ptr<const CardSet> set,
                     const MatchConfig& config, std::uint64_t seed, const DriverOptions& opts) {
    GameState state = new_game(deck_first, deck_second, set, config, seed);

    GameRecord record;
    record.seed = seed;
    record.deck_names = {deck_first.name, deck_second.name};

    Agent* agents[2] = {&first, &second};
    const std::string deck_names[2] = {deck_first.name, deck_second.name};
    for (int i = 0; i < 2; ++i) {
        GameContext ctx;
        ctx.seat = i == 0 ? Seat::First : Seat::Second;
        ctx.seed = seed;
        ctx.deck_name = deck_names[i];
        ctx.config = config;
        ctx.set = set;
        agents[i]->initialize_game(ctx);
    }

    const double budget = static_cast<double>(config.time_budget_ms);
    int budget_turn = -1;     // turn the elapsed pool belongs to
    double elapsed_ms = 0.0;  // consumed budget within that turn

    std::optional<GameResult> final_result;

    while (!final_result) {
        const std::optional<GameResult> engine_result = game_result(state);
        if (engine_result) {
            final_result = engine_result;
            break;
        }

        const Seat active = state.active_seat;
        const int idx = seat_index(active);
        AgentGameStats& stats = record.agents[idx];

        if (state.turn_number != budget_turn) {
            budget_turn = state.turn_number;
            elapsed_ms = 0.0;
        }

        Action action = Action::end_turn();
        bool forced = false;

        const double remaining = budget - elapsed_ms;
        if (remaining <= 0.0) {
            // Pool exhausted before the call: end the turn for them.
            forced = true;
            stats.timeouts += 1;
        } else {
            Observation obs = observe(state, active);
            const auto start = Clock::now();
            bool faulted = false;
            try {
                action = agents[idx]->get_move(obs);
            } catch (const std::exception&) {
                faulted = true;
            }
            const double duration = ms_since(start);
            elapsed_ms += duration;
            stats.moves_made += 1;
            stats.total_response_ms += duration;
            stats.max_response_ms = std::max(stats.max_response_ms, duration);

            if (faulted) {
                stats.faults += 1;
                final_result = forfeit(active, state.turn_number);
                break;
            }
            if (duration > 2.0 * remaining) {
                // In flight at expiry and past the hard cap: discard the
                // answer, record the overrun, end the turn.
                forced = true;
                stats.timeouts += 1;
            } else {
                const auto& options = obs.options;
                if (std::find(options.begin(), options.end(), action) == options.end()) {
                    stats.faults += 1;
                    if (opts.illegal_policy == IllegalActionPolicy::Loss) {
                        final_result = forfeit(active, state.turn_number);
                        break;
                    }
                    forced = true;
                }
            }
        }

        if (forced) action = Action::end_turn();
        apply_action_in_place(state, action);
        record.actions.push_back(action);
    }

    record.result = *final_result;
    record.final_turn = state.turn_number;
    record.event_log = std::move(state.events);
    for (Agent* a : agents) {
        try {
            a->finalize_game(record.result);
        } catch (const std::exception&) {
            // A fault during teardown no longer changes the outcome.
        }
    }
    return record;
}

GameStats play_games(int n, Agent& agent_a, Agent& agent_b, const DeckSpec& deck_a,
                     const DeckSpec& deck_b, std::shared_ptr<const CardSet> set,
                     const MatchConfig& config, std::uint64_t base_seed,
                     const DriverOptions& opts) {
    if (n < 1) throw ConfigError("play_games needs n >= 1");
    GameStats stats;
    stats.agents[0].name = agent_a.name();
    stats.agents[1].name = agent_b.name();

    for (int game = 0; game < n; ++game) {
        const bool a_first = game % 2 == 0;
        Agent& first = a_first ? agent_a : agent_b;
        Agent& second = a_first ? agent_b : agent_a;
        const DeckSpec& deck_first = a_first ? deck_a : deck_b;
        const DeckSpec& deck_second = a_first ? deck_b : deck_a;

        const GameRecord record =
            play_game(first, second, deck_first, deck_second, set, config, base_seed + game, opts);

        for (int seat = 0; seat < 2; ++seat) {
            const bool is_a = (seat == 0) == a_first;
            GameStats::PerAgent& agg = stats.agents[is_a ? 0 : 1];
            const AgentGameStats& per = record.agents[seat];
            agg.games += 1;
            agg.moves += per.moves_made;
            agg.total_response_ms += per.total_response_ms;
            agg.max_response_ms = std::max(agg.max_response_ms, per.max_response_ms);
            agg.timeouts += per.timeouts;
            agg.faults += per.faults;
            if (record.result.is_draw()) {
                agg.draws += 1;
            } else if (seat_index(*record.result.winner) == seat) {
                agg.wins += 1;
            } else {
                agg.losses += 1;
            }
        }
        stats.games += 1;
    }
    return stats;
}

}  // namespace ccg
