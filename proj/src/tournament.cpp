#include "ccg/tournament.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <thread>

#include "ccg/errors.hpp"
#include "ccg/rng.hpp"
#include "json.hpp"

namespace ccg {

using nlohmann::ordered_json;

const char* to_string(TrackKind k) {
    return k == TrackKind::PremadeDeck ? "premade" : "userdeck";
}

std::vector<std::pair<int, int>> schedule_round_robin(int agent_count) {
    if (agent_count < 2) throw TooFewAgents();
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(agent_count) * (agent_count - 1) / 2);
    for (int i = 0; i < agent_count; ++i)
        for (int j = i + 1; j < agent_count; ++j) pairs.emplace_back(i, j);
    return pairs;
}

namespace {

struct ScheduledGame {
    int game_index;
    int pairing;
    int agent_a;  // participant indices
    int agent_b;
    const DeckSpec* deck_a;
    const DeckSpec* deck_b;
    std::uint64_t seed;
    bool a_first;
};

struct PlayedGame {
    GameRow row;
    AgentGameStats stats_a;
    AgentGameStats stats_b;
};

PlayedGame run_one(const ScheduledGame& g, const std::vector<Participant>& agents,
                   const std::shared_ptr<const CardSet>& set, const TrackConfig& track) {
    std::unique_ptr<Agent> agent_a = agents[g.agent_a].make_agent();
    std::unique_ptr<Agent> agent_b = agents[g.agent_b].make_agent();
    agent_a->initialize_agent();
    agent_b->initialize_agent();

    Agent& first = g.a_first ? *agent_a : *agent_b;
    Agent& second = g.a_first ? *agent_b : *agent_a;
    const DeckSpec& deck_first = g.a_first ? *g.deck_a : *g.deck_b;
    const DeckSpec& deck_second = g.a_first ? *g.deck_b : *g.deck_a;

    const GameRecord record = play_game(first, second, deck_first, deck_second, set, track.match,
                                        g.seed, track.driver);

    agent_a->finalize_agent();
    agent_b->finalize_agent();

    PlayedGame out;
    out.row.game_index = g.game_index;
    out.row.pairing = g.pairing;
    out.row.agent_a = agents[g.agent_a].name;
    out.row.agent_b = agents[g.agent_b].name;
    out.row.deck_a = g.deck_a->name;
    out.row.deck_b = g.deck_b->name;
    out.row.seed = g.seed;
    out.row.first_seat_agent = g.a_first ? Seat::First : Seat::Second;
    out.row.result = record.result;
    out.row.turns = record.final_turn;
    if (record.result.winner) {
        const bool first_won = *record.result.winner == Seat::First;
        out.row.winner_name = (first_won == g.a_first) ? out.row.agent_a : out.row.agent_b;
    }
    const AgentGameStats& first_stats = record.agents[0];
    const AgentGameStats& second_stats = record.agents[1];
    out.stats_a = g.a_first ? first_stats : second_stats;
    out.stats_b = g.a_first ? second_stats : first_stats;
    out.row.response_ms_a = out.stats_a.total_response_ms;
    out.row.response_ms_b = out.stats_b.total_response_ms;
    return out;
}

TrackReport run_schedule(const std::vector<ScheduledGame>& schedule,
                         const std::vector<Participant>& agents,
                         const std::shared_ptr<const CardSet>& set, const TrackConfig& track,
                         int parallelism) {
    std::vector<PlayedGame> played(schedule.size());

    if (parallelism <= 1) {
        for (std::size_t i = 0; i < schedule.size(); ++i)
            played[i] = run_one(schedule[i], agents, set, track);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= schedule.size()) return;
                played[i] = run_one(schedule[i], agents, set, track);
            }
        };
        std::vector<std::thread> pool;
        const int threads = std::min<int>(parallelism, static_cast<int>(schedule.size()));
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    TrackReport report;
    report.kind = track.kind;
    report.base_seed = track.base_seed;

    std::map<std::string, AgentAggregate> totals;
    for (const Participant& p : agents) totals[p.name].name = p.name;

    for (const PlayedGame& g : played) {
        report.games.push_back(g.row);
        AgentAggregate& a = totals[g.row.agent_a];
        AgentAggregate& b = totals[g.row.agent_b];
        a.games += 1;
        b.games += 1;
        if (g.row.winner_name.empty()) {
            a.draws += 1;
            b.draws += 1;
        } else if (g.row.winner_name == g.row.agent_a) {
            a.wins += 1;
            b.losses += 1;
        } else {
            a.losses += 1;
            b.wins += 1;
        }
        a.moves += g.stats_a.moves_made;
        a.total_response_ms += g.stats_a.total_response_ms;
        a.timeouts += g.stats_a.timeouts;
        a.faults += g.stats_a.faults;
        b.moves += g.stats_b.moves_made;
        b.total_response_ms += g.stats_b.total_response_ms;
        b.timeouts += g.stats_b.timeouts;
        b.faults += g.stats_b.faults;
    }

    for (auto& [name, agg] : totals) report.ranking.rows.push_back(agg);
    std::sort(report.ranking.rows.begin(), report.ranking.rows.end(),
              [](const AgentAggregate& x, const AgentAggregate& y) {
                  if (x.win_rate() != y.win_rate()) return x.win_rate() > y.win_rate();
                  if (x.avg_response_ms() != y.avg_response_ms())
                      return x.avg_response_ms() < y.avg_response_ms();
                  return x.name < y.name;
              });
    return report;
}

}  // namespace

TrackReport run_premade_track(const std::vector<Participant>& agents, const TrackConfig& track,
                              std::shared_ptr<const CardSet> set, int parallelism) {
    if (track.kind != TrackKind::PremadeDeck)
        throw InvalidTrackConfig("track kind must be PremadeDeck");
    if (track.decks.size() != 6)
        throw InvalidTrackConfig("the premade track needs exactly 6 decks, got " +
                                 std::to_string(track.decks.size()));
    int known = 0;
    for (const PremadeDeckEntry& e : track.decks) known += e.known ? 1 : 0;
    if (known != 3)
        throw InvalidTrackConfig("the premade track needs exactly 3 known decks, got " +
                                 std::to_string(known));
    if (track.repeats < 1) throw InvalidTrackConfig("repeats must be >= 1");
    for (const PremadeDeckEntry& e : track.decks) {
        const auto report = validate_deck(e.deck, *set);
        if (!report.empty())
            throw InvalidTrackConfig("premade deck '" + e.deck.name + "' is invalid: " +
                                     report.front().describe());
    }

    const auto pairings = schedule_round_robin(static_cast<int>(agents.size()));
    std::vector<ScheduledGame> schedule;
    schedule.reserve(pairings.size() * 36 * track.repeats);
    int game_index = 0;
    for (std::size_t pi = 0; pi < pairings.size(); ++pi) {
        const auto [i, j] = pairings[pi];
        for (int xi = 0; xi < 6; ++xi) {
            for (int yi = 0; yi < 6; ++yi) {
                for (int r = 0; r < track.repeats; ++r) {
                    const int deck_pair = xi * 6 + yi;
                    const int local = deck_pair * track.repeats + r;
                    ScheduledGame g;
                    g.game_index = game_index++;
                    g.pairing = static_cast<int>(pi);
                    g.agent_a = i;
                    g.agent_b = j;
                    g.deck_a = &track.decks[xi].deck;
                    g.deck_b = &track.decks[yi].deck;
                    g.seed = derive_seed(track.base_seed,
                                         {static_cast<std::uint64_t>(pi),
                                          static_cast<std::uint64_t>(deck_pair),
                                          static_cast<std::uint64_t>(r)});
                    g.a_first = local % 2 == 0;
                    schedule.push_back(g);
                }
            }
        }
    }
    return run_schedule(schedule, agents, set, track, parallelism);
}

TrackReport run_user_deck_track(const std::vector<Participant>& agents,
                                const std::vector<DeckSpec>& decks, const TrackConfig& track,
                                std::shared_ptr<const CardSet> set, int parallelism) {
    if (track.kind != TrackKind::UserCreatedDeck)
        throw InvalidTrackConfig("track kind must be UserCreatedDeck");
    if (agents.size() != decks.size())
        throw InvalidTrackConfig("every agent needs exactly one deck");
    if (track.repeats < 1) throw InvalidTrackConfig("repeats must be >= 1");

    std::vector<Participant> qualified;
    std::vector<const DeckSpec*> qualified_decks;
    std::vector<std::string> disqualified;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const auto report = validate_deck(decks[i], *set);
        if (report.empty()) {
            qualified.push_back(agents[i]);
            qualified_decks.push_back(&decks[i]);
        } else {
            disqualified.push_back(agents[i].name + ": " + report.front().describe());
        }
    }

    const auto pairings = schedule_round_robin(static_cast<int>(qualified.size()));
    std::vector<ScheduledGame> schedule;
    schedule.reserve(pairings.size() * track.repeats);
    int game_index = 0;
    for (std::size_t pi = 0; pi < pairings.size(); ++pi) {
        const auto [i, j] = pairings[pi];
        for (int r = 0; r < track.repeats; ++r) {
            ScheduledGame g;
            g.game_index = game_index++;
            g.pairing = static_cast<int>(pi);
            g.agent_a = i;
            g.agent_b = j;
            g.deck_a = qualified_decks[i];
            g.deck_b = qualified_decks[j];
            g.seed = derive_seed(track.base_seed, {static_cast<std::uint64_t>(pi), 0,
                                                   static_cast<std::uint64_t>(r)});
            g.a_first = r % 2 == 0;
            schedule.push_back(g);
        }
    }
    TrackReport report = run_schedule(schedule, qualified, set, track, parallelism);
    report.disqualified = std::move(disqualified);
    return report;
}

SubTournamentPlan split_sub_tournaments(const std::vector<std::string>& agents,
                                        int max_group_size, std::uint64_t shuffle_seed,
                                        int finalist_count) {
    if (max_group_size < 2) throw InvalidGroupSize("max group size must be >= 2");
    const int n = static_cast<int>(agents.size());
    if (n < 2) throw TooFewAgents();

    std::vector<std::string> shuffled = agents;
    Rng rng(derive_seed(shuffle_seed, {0x57ab1eull}));
    rng.shuffle(shuffled);

    const int groups = (n + max_group_size - 1) / max_group_size;
    const int base = n / groups;
    const int extra = n % groups;  // the first `extra` groups take one more

    SubTournamentPlan plan;
    plan.groups.resize(groups);
    int cursor = 0;
    for (int g = 0; g < groups; ++g) {
        const int size = base + (g < extra ? 1 : 0);
        for (int k = 0; k < size; ++k) plan.groups[g].push_back(shuffled[cursor++]);
    }
    if (finalist_count <= 0) finalist_count = groups;
    plan.promote_per_group = (finalist_count + groups - 1) / groups;
    return plan;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace {

std::string format_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

}  // namespace

std::string report_to_csv(const TrackReport& report) {
    std::string out =
        "game,pairing,agent_a,agent_b,deck_a,deck_b,seed,first,winner,reason,turns,"
        "response_ms_a,response_ms_b\n";
    for (const GameRow& g : report.games) {
        out += std::to_string(g.game_index);
        out += ',' + std::to_string(g.pairing);
        out += ',' + g.agent_a;
        out += ',' + g.agent_b;
        out += ',' + g.deck_a;
        out += ',' + g.deck_b;
        out += ',' + std::to_string(g.seed);
        out += ',';
        out += g.first_seat_agent == Seat::First ? g.agent_a : g.agent_b;
        out += ',' + g.winner_name;
        out += ',';
        out += to_string(g.result.reason);
        out += ',' + std::to_string(g.turns);
        out += ',' + format_ms(g.response_ms_a);
        out += ',' + format_ms(g.response_ms_b);
        out += '\n';
    }
    return out;
}

std::string report_to_json(const TrackReport& report) {
    ordered_json j;
    j["track"] = to_string(report.kind);
    j["baseSeed"] = report.base_seed;
    j["games"] = report.games.size();
    j["disqualified"] = report.disqualified;
    ordered_json ranking = ordered_json::array();
    for (const AgentAggregate& a : report.ranking.rows) {
        ordered_json row;
        row["agent"] = a.name;
        row["winRate"] = a.win_rate();
        row["wins"] = a.wins;
        row["draws"] = a.draws;
        row["losses"] = a.losses;
        row["games"] = a.games;
        row["avgResponseMs"] = a.avg_response_ms();
        row["timeouts"] = a.timeouts;
        row["faults"] = a.faults;
        ranking.push_back(row);
    }
    j["ranking"] = ranking;
    return j.dump(2) + "\n";
}

std::string ranking_to_text(const RankingTable& table) {
    std::string out = "rank  agent                 win_rate  wins  draws  losses  games  avg_ms\n";
    int rank = 1;
    for (const AgentAggregate& a : table.rows) {
        char line[160];
        std::snprintf(line, sizeof line, "%-5d %-21s %8.3f %5d %6d %7d %6d %7.1f\n", rank,
                      a.name.c_str(), a.win_rate(), a.wins, a.draws, a.losses, a.games,
                      a.avg_response_ms());
        out += line;
        ++rank;
    }
    return out;
}

}  // namespace ccg
