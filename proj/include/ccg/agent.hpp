#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>

#include "ccg/engine.hpp"
#include "ccg/observation.hpp"

namespace ccg {

// ---------------------------------------------------------------------------
// Agent lifecycle contract and the match driver.
//
// Lifecycle: initialize_agent / finalize_agent bracket a session,
// initialize_game / finalize_game bracket every game, and get_move is
// called only between game brackets while the agent's seat is active.
// ---------------------------------------------------------------------------

struct GameContext {
    Seat seat = Seat::First;
    std::uint64_t seed = 0;  // the game's seed; agents derive their streams from it
    std::string deck_name;
    MatchConfig config;
    std::shared_ptr<const CardSet> set;
};

class Agent {
public:
    virtual ~Agent() = default;
    virtual void initialize_agent() {}
    virtual void initialize_game(const GameContext&) {}
    virtual Action get_move(const Observation& obs) = 0;
    virtual void finalize_game(const GameResult&) {}
    virtual void finalize_agent() {}
    virtual std::string name() const = 0;
};

// What to do when an agent returns an action outside its options.
// Loss keeps competition incentives clean; ForceEndTurn is for
// development runs.
enum class IllegalActionPolicy { Loss, ForceEndTurn };

struct DriverOptions {
    IllegalActionPolicy illegal_policy = IllegalActionPolicy::Loss;
};

struct AgentGameStats {
    int moves_made = 0;
    double total_response_ms = 0.0;
    double max_response_ms = 0.0;
    int timeouts = 0;  // turns forcibly ended on budget
    int faults = 0;    // exceptions + illegal actions
};

struct GameRecord {
    GameResult result;                       // from seat First's perspective ordering
    std::array<AgentGameStats, 2> agents;    // indexed by seat
    std::array<std::string, 2> deck_names;   // indexed by seat
    std::uint64_t seed = 0;
    int final_turn = 0;
    std::vector<Action> actions;             // applied sequence, forced EndTurns included
    std::vector<GameEvent> event_log;
};

// Runs one full game between two agents. The per-turn time budget is
// enforced cooperatively: elapsed wall-clock is checked between
// get_move calls, and a call already in flight at expiry is awaited up
// to a hard cap of 2x the budget remaining when it started, after
// which its action is discarded and the turn is forcibly ended.
// Agent exceptions and (under the Loss policy) illegal actions forfeit
// the game. Throws InvalidDeck for bad decks.
GameRecord play_game(Agent& first, Agent& second, const DeckSpec& deck_first,
                     const DeckSpec& deck_second, std::shared_ptr<const CardSet> set,
                     const MatchConfig& config, std::uint64_t seed,
                     const DriverOptions& opts = {});

struct GameStats {
    struct PerAgent {
        std::string name;
        int wins = 0;
        int draws = 0;
        int losses = 0;
        int games = 0;
        long long moves = 0;
        double total_response_ms = 0.0;
        double max_response_ms = 0.0;
        int timeouts = 0;
        int faults = 0;

        double avg_response_ms() const { return moves > 0 ? total_response_ms / moves : 0.0; }
        double win_rate() const { return games > 0 ? (wins + 0.5 * draws) / games : 0.0; }
    };
    std::array<PerAgent, 2> agents;  // [0] = agent_a, [1] = agent_b
    int games = 0;
};

// Plays n games with seeds base_seed..base_seed+n-1, alternating the
// first-move seat each game (agent_a is First in even-indexed games).
GameStats play_games(int n, Agent& agent_a, Agent& agent_b, const DeckSpec& deck_a,
                     const DeckSpec& deck_b, std::shared_ptr<const CardSet> set,
                     const MatchConfig& config, std::uint64_t base_seed,
                     const DriverOptions& opts = {});

}  // namespace ccg
