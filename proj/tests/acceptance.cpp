// Acceptance suite: runs every release criterion at its pinned
// tolerance and prints one PASS/FAIL line per criterion. Exits with the
// number of failed criteria.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "ccg/agents_baseline.hpp"
#include "ccg/errors.hpp"
#include "ccg/tournament.hpp"
#include "helpers.hpp"
#include "legality_oracle.hpp"

using namespace ccg;
using namespace ccg::testing;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::function<void(std::string& detail)> body;  // throws on failure
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

// ---------------------------------------------------------------------------
// Ladder fixtures. Thresholds frozen after the first oracle
// measurement (200 seat-alternating games on the bundled mirror deck,
// fresh agents per game, base seeds as below):
//   greedy  vs random : win rate 1.000
//   flatmc16 vs greedy: win rate 0.645
// The pass bound is the one-sided 95% significance level for n = 200
// against 0.5: 0.5 + 1.645 * 0.5 / sqrt(200).
// ---------------------------------------------------------------------------
constexpr int kLadderGames = 200;
constexpr double kLadderSignificanceBound = 0.558;
constexpr std::uint64_t kLadderSeedGreedyVsRandom = 777;
constexpr std::uint64_t kLadderSeedFlatMcVsGreedy = 31337;

double ladder_win_rate(const std::function<std::unique_ptr<Agent>()>& make_a,
                       const std::function<std::unique_ptr<Agent>()>& make_b, int n,
                       std::uint64_t base_seed, int workers) {
    std::atomic<int> score_halves{0};
    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            const int g = next.fetch_add(1);
            if (g >= n) return;
            std::unique_ptr<Agent> a = make_a();
            std::unique_ptr<Agent> b = make_b();
            a->initialize_agent();
            b->initialize_agent();
            const bool a_first = g % 2 == 0;
            Agent& first = a_first ? *a : *b;
            Agent& second = a_first ? *b : *a;
            const GameRecord rec =
                play_game(first, second, neutral_deck(), neutral_deck(HeroClass::Druid),
                          builtin_set(), MatchConfig{}, base_seed + g);
            a->finalize_agent();
            b->finalize_agent();
            if (rec.result.is_draw())
                score_halves += 1;
            else if ((*rec.result.winner == Seat::First) == a_first)
                score_halves += 2;
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    return score_halves.load() / (2.0 * n);
}

// ---------------------------------------------------------------------------
// Criterion bodies
// ---------------------------------------------------------------------------

void criterion_constants(std::string& detail) {
    const GameState fresh =
        new_game(neutral_deck(), mage_deck(), builtin_set(), MatchConfig{}, 1);
    require(fresh.players[0].hero_health == 30 && fresh.players[1].hero_health == 30,
            "heroes must start at 30");

    // Mana never exceeds 10 no matter how many turns ramp it.
    GameState ramp = fresh;
    for (int i = 0; i < 30 && !game_result(ramp); ++i) apply_action_in_place(ramp, Action::end_turn());
    for (const PlayerState& p : ramp.players) {
        require(p.mana_max <= 10 && p.mana_current <= p.mana_max, "mana cap broken");
    }
    require(ramp.players[0].mana_max == 10, "mana must reach the cap of 10");

    // Decks of exactly 30 enforced.
    DeckSpec short_deck = neutral_deck();
    short_deck.card_ids.pop_back();
    const auto report = validate_deck(short_deck, builtin_card_set());
    require(report.size() == 1 && report[0].kind == DeckViolation::Kind::DeckSizeInvalid,
            "29-card deck must be rejected");
    bool rejected = false;
    try {
        new_game(short_deck, mage_deck(), builtin_set(), MatchConfig{}, 1);
    } catch (const InvalidDeck&) {
        rejected = true;
    }
    require(rejected, "new_game must reject an invalid deck");

    // Default turn limit 50 yields a draw for pass-only agents.
    struct PassAgent : Agent {
        Action get_move(const Observation&) override { return Action::end_turn(); }
        std::string name() const override { return "pass"; }
    } pass_a, pass_b;
    const MatchConfig defaults;
    require(defaults.turn_limit == 50, "default turn limit must be 50");
    require(defaults.time_budget_ms == 60000, "default budget must be 60000 ms");
    const GameRecord record = play_game(pass_a, pass_b, neutral_deck(),
                                        neutral_deck(HeroClass::Druid), builtin_set(), defaults, 2);
    require(record.result.is_draw() && record.result.reason == GameResult::Reason::TurnLimit &&
                record.final_turn == 50,
            "pass-only game must draw at turn 50");

    // The budget is configurable.
    MatchConfig fast = defaults;
    fast.time_budget_ms = 100;
    const GameRecord quick = play_game(pass_a, pass_b, neutral_deck(),
                                       neutral_deck(HeroClass::Druid), builtin_set(), fast, 3);
    require(quick.result.is_draw(), "configurable budget game must complete");
    detail = "health 30, mana cap 10, deck size 30, draw at 50, budget 60000 ms configurable";
}

void criterion_fuzz(std::string& detail) {
    const DeckSpec decks[4] = {mage_deck(), warrior_deck(), priest_deck(), neutral_deck()};
    int finished = 0;
    long long actions = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const DeckSpec& a = decks[seed % 4];
        const DeckSpec& b = decks[(seed / 4 + 1) % 4];
        // random_playout applies check_invariants after every action and
        // throws on the first violation.
        const PlayoutResult result = random_playout(a, b, seed);
        actions += result.actions_applied;
        if (game_result(result.state)) ++finished;
    }
    require(finished == 1000, "every random game must finish");
    detail = "1000 games, " + std::to_string(actions) + " actions, zero violations";
}

void criterion_determinism(std::string& detail) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto run = [&seed]() {
            RandomAgent a(1), b(2);
            GameContext unused;
            return play_game(a, b, mage_deck(), warrior_deck(), builtin_set(), MatchConfig{},
                             seed);
        };
        const GameRecord r1 = run();
        const GameRecord r2 = run();
        require(serialize_event_log(r1.event_log) == serialize_event_log(r2.event_log),
                "event logs differ for seed " + std::to_string(seed));
    }
    detail = "100 seeds replayed twice, logs byte-identical";
}

void criterion_information_hiding(std::string& detail) {
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 200 && seed < 2000; ++seed) {
        const GameState s = random_midgame(seed, static_cast<int>(6 + seed % 40));
        if (game_result(s)) continue;
        ++checked;
        for (Seat viewer : {s.active_seat, other(s.active_seat)}) {
            const std::string baseline = serialize_observation(observe(s, viewer));
            for (std::uint64_t salt = 1; salt <= 3; ++salt) {
                const GameState mutated = mutate_hidden_zones(s, viewer, seed * 7 + salt);
                require(serialize_observation(observe(mutated, viewer)) == baseline,
                        "hidden-zone replacement changed the observation");
            }
        }
    }
    require(checked == 200, "expected 200 mid-game states");
    detail = "200 states x 2 viewers x 3 replacements, observations byte-identical";
}

void criterion_legal_actions(std::string& detail) {
    int states = 0;
    int oracle_states = 0;
    Rng fuzz(0xACCE55);
    for (std::uint64_t seed = 0; states < 500 && seed < 5000; ++seed) {
        const GameState s = random_midgame(seed, static_cast<int>(seed % 60));
        if (game_result(s)) continue;
        ++states;

        const std::vector<Action> options = legal_actions(s);
        // Soundness: every enumerated action applies without error.
        for (const Action& a : options) {
            GameState probe = s;
            apply_action_in_place(probe, a);
        }
        // Rejection: fuzzed encodings outside the list must throw.
        for (int i = 0; i < 20; ++i) {
            Action bogus;
            bogus.type = static_cast<ActionType>(fuzz.uniform(5));
            bogus.hand_index = static_cast<int>(fuzz.uniform(12)) - 1;
            bogus.attacker = static_cast<int>(fuzz.uniform(200));
            switch (fuzz.uniform(3)) {
                case 0:
                    bogus.target = EntityRef::hero(fuzz.uniform(2) ? Seat::First : Seat::Second);
                    break;
                case 1:
                    bogus.target = EntityRef::minion(static_cast<int>(fuzz.uniform(200)));
                    break;
                default:
                    break;
            }
            if (std::find(options.begin(), options.end(), bogus) != options.end()) continue;
            GameState probe = s;
            bool threw = false;
            try {
                apply_action_in_place(probe, bogus);
            } catch (const IllegalAction&) {
                threw = true;
            }
            require(threw, "non-enumerated action was accepted");
        }
        // Completeness against the brute-force oracle on small boards.
        if (s.players[0].board.size() <= 4 && s.players[1].board.size() <= 4) {
            ++oracle_states;
            for (const Action& a : candidate_action_space(s)) {
                const bool enumerated =
                    std::find(options.begin(), options.end(), a) != options.end();
                require(enumerated == oracle_is_legal(s, a),
                        "oracle disagreement at seed " + std::to_string(seed));
            }
        }
    }
    require(states == 500, "expected 500 states");
    detail = std::to_string(states) + " states fuzzed, " + std::to_string(oracle_states) +
             " cross-checked against the brute-force oracle";
}

// Closed-form pass-only fatigue oracle. With starting hands (3, 4) and
// a turn-start draw every own turn, a player holding `d` deck cards
// after the opener takes fatigue hit n on their own turn d + 1 + (n-1),
// i.e. global turn 2*(d + n) - 1 for First and 2*(d + n) for Second,
// with damage n and cumulative n(n+1)/2.
struct FatigueOracle {
    int deck_after_open_first = 30 - 3;
    int deck_after_open_second = 30 - 4;

    int first_fatigue_global_turn(Seat seat) const {
        const int d = seat == Seat::First ? deck_after_open_first : deck_after_open_second;
        return seat == Seat::First ? 2 * (d + 1) - 1 : 2 * (d + 1);
    }
    int cumulative_at(Seat seat, int global_turn_limit) const {
        const int d = seat == Seat::First ? deck_after_open_first : deck_after_open_second;
        int total = 0;
        for (int n = 1;; ++n) {
            const int turn = seat == Seat::First ? 2 * (d + n) - 1 : 2 * (d + n);
            if (turn > global_turn_limit) break;
            total += n;
            if (total >= 30) break;  // the hero is dead by here
        }
        return total;
    }
    int death_global_turn(Seat seat) const {
        const int d = seat == Seat::First ? deck_after_open_first : deck_after_open_second;
        int total = 0;
        for (int n = 1;; ++n) {
            total += n;  // n(n+1)/2 cumulative
            if (total >= 30) return seat == Seat::First ? 2 * (d + n) - 1 : 2 * (d + n);
        }
    }
};

void criterion_fatigue(std::string& detail) {
    const FatigueOracle oracle;

    auto run_pass_only = [](int turn_limit) {
        MatchConfig config;
        config.turn_limit = turn_limit;
        GameState s = new_game(neutral_deck(), neutral_deck(HeroClass::Druid), builtin_set(),
                               config, 17);
        while (!game_result(s)) apply_action_in_place(s, Action::end_turn());
        return s;
    };

    // Default limit 50: fatigue never begins; cumulative damage is 0.
    {
        const GameState s = run_pass_only(50);
        require(oracle.cumulative_at(Seat::First, 50) == 0 &&
                    oracle.cumulative_at(Seat::Second, 50) == 0,
                "oracle must predict no fatigue by turn 50");
        for (const GameEvent& e : s.events)
            require(e.kind != EventKind::FatigueDamage, "no fatigue may occur by turn 50");
        require(s.players[0].hero_health == 30 && s.players[1].hero_health == 30,
                "pass-only heroes must be untouched at the draw");
        const auto r = game_result(s);
        require(r && r->is_draw() && r->reason == GameResult::Reason::TurnLimit,
                "pass-only game must draw");
    }

    // Extended limit: fatigue starts and kills exactly where predicted.
    {
        const GameState s = run_pass_only(80);
        int first_seen[2] = {0, 0};
        int cumulative[2] = {0, 0};
        for (const GameEvent& e : s.events) {
            if (e.kind != EventKind::FatigueDamage) continue;
            const int idx = e.payload["seat"] == "first" ? 0 : 1;
            cumulative[idx] += e.payload["amount"].get<int>();
            if (first_seen[idx] == 0) {
                // The draw happens right after TurnStarted of that turn.
                first_seen[idx] = s.events[e.ordinal - 1].payload["turn"].get<int>();
            }
        }
        require(first_seen[0] == oracle.first_fatigue_global_turn(Seat::First),
                "first player's fatigue must begin on the predicted turn");
        require(first_seen[1] == oracle.first_fatigue_global_turn(Seat::Second),
                "second player's fatigue must begin on the predicted turn");

        const auto r = game_result(s);
        require(r && !r->is_draw() && r->reason == GameResult::Reason::HeroDead,
                "extended pass-only game must end by fatigue death");
        require(*r->winner == Seat::First, "the second player exhausts first");
        require(r->final_turn == oracle.death_global_turn(Seat::Second),
                "death turn must match the k(k+1)/2 oracle");
        require(cumulative[1] >= 30 && cumulative[1] == oracle.cumulative_at(Seat::Second, 80),
                "cumulative fatigue must match the oracle");
    }
    detail = "fatigue onset turns " +
             std::to_string(oracle.first_fatigue_global_turn(Seat::First)) + "/" +
             std::to_string(oracle.first_fatigue_global_turn(Seat::Second)) +
             ", death turn " + std::to_string(oracle.death_global_turn(Seat::Second)) +
             ", zero fatigue by the 50-turn draw";
}

void criterion_ladder(std::string& detail) {
    const double greedy_wr = ladder_win_rate(
        []() -> std::unique_ptr<Agent> { return std::make_unique<GreedyAgent>(); },
        []() -> std::unique_ptr<Agent> { return std::make_unique<RandomAgent>(); }, kLadderGames,
        kLadderSeedGreedyVsRandom, 2);
    require(greedy_wr > kLadderSignificanceBound,
            "greedy must beat random at 95% confidence, got " + std::to_string(greedy_wr));

    const double mc_wr = ladder_win_rate(
        []() -> std::unique_ptr<Agent> { return std::make_unique<FlatMcAgent>(16, 30); },
        []() -> std::unique_ptr<Agent> { return std::make_unique<GreedyAgent>(); }, kLadderGames,
        kLadderSeedFlatMcVsGreedy, 2);
    require(mc_wr > kLadderSignificanceBound,
            "flat MC (k=16) must beat greedy at 95% confidence, got " + std::to_string(mc_wr));

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "greedy>random %.3f, flatmc16>greedy %.3f (bound %.3f, n=%d each)", greedy_wr,
                  mc_wr, kLadderSignificanceBound, kLadderGames);
    detail = buf;
}

std::string strip_timing_columns(const std::string& csv) {
    std::string out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        for (int i = 0; i < 2; ++i) {
            const auto comma = line.rfind(',');
            if (comma != std::string::npos) line.erase(comma);
        }
        out += line;
        out += '\n';
    }
    return out;
}

void criterion_tournament(std::string& detail) {
    TrackConfig track;
    track.kind = TrackKind::PremadeDeck;
    track.repeats = 1;
    track.base_seed = 404;
    DeckSpec specs[6] = {neutral_deck(HeroClass::Rogue), mage_deck(),   warrior_deck(),
                         priest_deck(),                  neutral_deck(HeroClass::Druid),
                         neutral_deck(HeroClass::Shaman)};
    for (int i = 0; i < 6; ++i) {
        specs[i].name += "-" + std::to_string(i);
        track.decks.push_back({specs[i], i < 3});
    }
    const std::vector<Participant> agents = {
        {"random", []() { return std::make_unique<RandomAgent>(); }},
        {"greedy", []() { return std::make_unique<GreedyAgent>(); }}};

    const TrackReport r1 = run_premade_track(agents, track, builtin_set(), 2);
    require(r1.games.size() == 36, "2 agents at repeats 1 must play exactly 36 games");
    int wins = 0, losses = 0;
    for (const AgentAggregate& a : r1.ranking.rows) {
        wins += a.wins;
        losses += a.losses;
    }
    require(wins == losses, "wins must equal losses across the table");

    const TrackReport r2 = run_premade_track(agents, track, builtin_set(), 1);
    require(strip_timing_columns(report_to_csv(r1)) == strip_timing_columns(report_to_csv(r2)),
            "rerun with the same base seed must reproduce the CSV byte-exactly");
    detail = "36 games, wins == losses, CSV reproduced byte-exactly (timing columns excluded)";
}

void criterion_subtournaments(std::string& detail) {
    std::vector<std::string> agents;
    for (int i = 0; i < 20; ++i) agents.push_back("agent" + std::to_string(i));
    const SubTournamentPlan plan = split_sub_tournaments(agents, 8, 2024);
    require(plan.groups.size() == 3, "20 agents at max 8 must form 3 groups");
    std::multiset<std::size_t> sizes;
    for (const auto& g : plan.groups) sizes.insert(g.size());
    require(sizes == std::multiset<std::size_t>({6, 7, 7}), "group sizes must be 7/7/6");
    const SubTournamentPlan again = split_sub_tournaments(agents, 8, 2024);
    require(again.groups == plan.groups && again.promote_per_group == plan.promote_per_group,
            "the plan must be deterministic under a fixed shuffle seed");
    detail = "groups 7/7/6, promotion plan deterministic under the fixed shuffle seed";
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "rule constants honored", criterion_constants},
        {2, "invariant fuzz suite (1000 random games)", criterion_fuzz},
        {3, "determinism (100 seeds, byte-identical logs)", criterion_determinism},
        {4, "information hiding (200 states)", criterion_information_hiding},
        {5, "legal-action soundness/completeness (500 states)", criterion_legal_actions},
        {6, "fatigue closed-form oracle", criterion_fatigue},
        {7, "agent strength ladder (200 games per rung)", criterion_ladder},
        {8, "tournament accounting (36 games, byte-exact CSV)", criterion_tournament},
        {9, "sub-tournament splitting (20 agents, max 8)", criterion_subtournaments},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        std::string error;
        try {
            c.body(detail);
        } catch (const std::exception& e) {
            ok = false;
            error = e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char line[400];
        std::snprintf(line, sizeof line, "%s criterion %d: %s [%.2fs] %s\n",
                      ok ? "PASS" : "FAIL", c.number, c.title.c_str(), seconds,
                      ok ? detail.c_str() : error.c_str());
        std::cout << line << std::flush;
        if (!ok) ++failures;
    }
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << "\n";
    return failures;
}
