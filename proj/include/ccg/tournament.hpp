#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ccg/agent.hpp"

namespace ccg {

// ---------------------------------------------------------------------------
// Competition tracks: round-robin scheduling, repeated matches with
// seat rotation, win-rate ranking, sub-tournament splitting, and report
// generation. Games are independent and may run on a worker pool;
// reports are canonicalized to schedule order regardless of execution
// order.
// ---------------------------------------------------------------------------

// A tournament entrant. Workers create a fresh agent per game through
// the factory, so agents never need to be reentrant.
struct Participant {
    std::string name;
    std::function<std::unique_ptr<Agent>()> make_agent;
};

enum class TrackKind { PremadeDeck, UserCreatedDeck };

const char* to_string(TrackKind k);

struct PremadeDeckEntry {
    DeckSpec deck;
    bool known = true;  // metadata only: all six decks are played either way
};

struct TrackConfig {
    TrackKind kind = TrackKind::PremadeDeck;
    std::vector<PremadeDeckEntry> decks;  // PremadeDeck: exactly 6, exactly 3 known
    int repeats = 1;
    MatchConfig match;
    std::uint64_t base_seed = 0;
    DriverOptions driver;
};

struct AgentAggregate {
    std::string name;
    int wins = 0;
    int draws = 0;
    int losses = 0;
    int games = 0;
    long long moves = 0;
    double total_response_ms = 0.0;
    int timeouts = 0;
    int faults = 0;

    double win_rate() const { return games > 0 ? (wins + 0.5 * draws) / games : 0.0; }
    double avg_response_ms() const { return moves > 0 ? total_response_ms / moves : 0.0; }
};

// Ranked by win rate descending; ties break to lower average response
// time, then to name.
struct RankingTable {
    std::vector<AgentAggregate> rows;
};

struct GameRow {
    int game_index = 0;    // canonical schedule position
    int pairing = 0;       // round-robin pairing index
    std::string agent_a;   // pairing's first entrant (not necessarily seat First)
    std::string agent_b;
    std::string deck_a;
    std::string deck_b;
    std::uint64_t seed = 0;
    Seat first_seat_agent = Seat::First;  // First when agent_a moved first
    GameResult result;                    // winner expressed in agent_a/agent_b terms below
    std::string winner_name;              // empty on draw
    int turns = 0;
    double response_ms_a = 0.0;
    double response_ms_b = 0.0;
};

struct TrackReport {
    TrackKind kind = TrackKind::PremadeDeck;
    std::uint64_t base_seed = 0;
    RankingTable ranking;
    std::vector<GameRow> games;
    std::vector<std::string> disqualified;  // user-deck track: "<name>: <reason>"
};

// Every unordered pair {i, j}, i < j, exactly once, in lexicographic
// index order. Throws TooFewAgents.
std::vector<std::pair<int, int>> schedule_round_robin(int agent_count);

// Premade track: for every agent pairing, all 36 ordered deck
// assignments (6 x 6, mirrors included), each repeated `repeats` times.
// Seats alternate with the local game index within a pairing. Game
// seeds derive from (base_seed, pairing, deck pair, repeat).
// Throws InvalidTrackConfig.
TrackReport run_premade_track(const std::vector<Participant>& agents, const TrackConfig& track,
                              std::shared_ptr<const CardSet> set, int parallelism = 1);

// User-created-deck track: each agent brings one deck; pairings play
// `repeats` games with seats alternating per repeat. Agents whose deck
// fails validation are disqualified and noted in the report.
TrackReport run_user_deck_track(const std::vector<Participant>& agents,
                                const std::vector<DeckSpec>& decks, const TrackConfig& track,
                                std::shared_ptr<const CardSet> set, int parallelism = 1);

// Splits agents into ceil(n / max_group_size) near-equal groups
// (sizes differ by at most one) after a seeded shuffle, and plans the
// promotion of each group's top ceil(finalist_count / groups) agents to
// a final round robin. finalist_count 0 means one per group.
// Throws InvalidGroupSize.
struct SubTournamentPlan {
    std::vector<std::vector<std::string>> groups;
    int promote_per_group = 1;
};

SubTournamentPlan split_sub_tournaments(const std::vector<std::string>& agents,
                                        int max_group_size, std::uint64_t shuffle_seed,
                                        int finalist_count = 0);

// Reports. CSV columns: game,pairing,agent_a,agent_b,deck_a,deck_b,
// seed,first,winner,reason,turns,response_ms_a,response_ms_b - the two
// timing columns are last so determinism checks can strip them.
std::string report_to_csv(const TrackReport& report);
std::string report_to_json(const TrackReport& report);
std::string ranking_to_text(const RankingTable& table);

}  // namespace ccg
