// ccgsim: play matches, run tournament tracks, validate decks, list
// cards, and verify replays. See README.md for formats and examples.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "ccg/agents_baseline.hpp"
#include "ccg/errors.hpp"
#include "ccg/process_agent.hpp"
#include "ccg/tournament.hpp"
#include "json.hpp"

namespace {

using namespace ccg;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;  // failed validation / replay mismatch
constexpr int kExitConfig = 2;   // bad arguments, files, or formats
constexpr int kExitFault = 3;    // an agent faulted during play

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << content;
}

std::shared_ptr<const CardSet> load_set_arg(const std::string& cards_path) {
    std::string path = cards_path;
    if (path.empty()) {
        if (const char* env = std::getenv("CCGSIM_CARDS")) path = env;
    }
    if (path.empty()) {
        return {std::shared_ptr<const CardSet>(), &builtin_card_set()};
    }
    return std::make_shared<const CardSet>(load_card_set(read_file(path)));
}

// ---------------------------------------------------------------------------
// Agent specs: "random", "random:seed=5", "greedy", "greedy:own_health=2",
// "flatmc", "flatmc:k=32,depth=40", "process:<shell command>".
// ---------------------------------------------------------------------------

struct AgentDefaults {
    HeuristicWeights weights;
    int flatmc_k = 16;
    int flatmc_depth = 30;
};

std::map<std::string, std::string> parse_params(const std::string& text) {
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("bad agent parameter: " + item);
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

HeuristicWeights weights_from_params(const std::map<std::string, std::string>& params,
                                     HeuristicWeights w) {
    auto take = [&params](const char* key, double& slot) {
        auto it = params.find(key);
        if (it != params.end()) slot = std::stod(it->second);
    };
    take("own_health", w.own_health);
    take("opp_health", w.opp_health);
    take("own_board_attack", w.own_board_attack);
    take("own_board_health", w.own_board_health);
    take("opp_board_attack", w.opp_board_attack);
    take("opp_board_health", w.opp_board_health);
    take("hand_size", w.hand_size);
    return w;
}

// Always-pass agent; handy as a tournament filler and for turn-limit
// experiments.
class EndTurnAgent : public Agent {
public:
    Action get_move(const Observation&) override { return Action::end_turn(); }
    std::string name() const override { return "endturn"; }
};

Participant make_participant(const std::string& spec, const AgentDefaults& defaults) {
    std::string kind = spec;
    std::string params_text;
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        kind = spec.substr(0, colon);
        params_text = spec.substr(colon + 1);
    }

    if (kind == "endturn") {
        return {"endturn", []() { return std::make_unique<EndTurnAgent>(); }};
    }
    if (kind == "process") {
        if (params_text.empty()) throw ConfigError("process agent needs a command");
        const std::string command = params_text;
        return {"process", [command]() { return std::make_unique<ProcessAgent>(command); }};
    }

    const auto params = parse_params(params_text);
    if (kind == "random") {
        std::uint64_t seed = 1;
        if (auto it = params.find("seed"); it != params.end()) seed = std::stoull(it->second);
        return {"random", [seed]() { return std::make_unique<RandomAgent>(seed); }};
    }
    if (kind == "greedy") {
        const HeuristicWeights w = weights_from_params(params, defaults.weights);
        return {"greedy", [w]() { return std::make_unique<GreedyAgent>(w); }};
    }
    if (kind == "flatmc") {
        int k = defaults.flatmc_k;
        int depth = defaults.flatmc_depth;
        if (auto it = params.find("k"); it != params.end()) k = std::stoi(it->second);
        if (auto it = params.find("depth"); it != params.end()) depth = std::stoi(it->second);
        const HeuristicWeights w = weights_from_params(params, defaults.weights);
        if (k < 1 || depth < 1) throw ConfigError("flatmc needs k >= 1 and depth >= 1");
        return {"flatmc", [k, depth, w]() { return std::make_unique<FlatMcAgent>(k, depth, w); }};
    }
    throw ConfigError("unknown agent spec '" + spec + "'");
}

AgentDefaults load_defaults(const std::string& config_path) {
    AgentDefaults d;
    if (config_path.empty()) return d;
    const ordered_json j = ordered_json::parse(read_file(config_path), nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw ConfigError("config file is not a JSON object: " + config_path);
    if (j.contains("weights")) {
        std::map<std::string, std::string> params;
        for (auto it = j["weights"].begin(); it != j["weights"].end(); ++it)
            params[it.key()] = it.value().dump();
        d.weights = weights_from_params(params, d.weights);
    }
    if (j.contains("flatmc")) {
        d.flatmc_k = j["flatmc"].value("k", d.flatmc_k);
        d.flatmc_depth = j["flatmc"].value("depth", d.flatmc_depth);
    }
    return d;
}

// Tournament stats are keyed by name; give repeated specs distinct ones.
void disambiguate_names(std::vector<Participant>& agents) {
    std::map<std::string, int> seen;
    for (Participant& p : agents) seen[p.name] += 1;
    std::map<std::string, int> counter;
    for (Participant& p : agents) {
        if (seen[p.name] < 2) continue;
        p.name += "#" + std::to_string(++counter[p.name]);
    }
}

// ---------------------------------------------------------------------------
// play
// ---------------------------------------------------------------------------

struct PlayArgs {
    std::string agent_a_spec, agent_b_spec;
    std::string deck_a_path, deck_b_path;
    std::string cards_path, config_path, log_path, record_path;
    std::uint64_t seed = 1;
    int turn_limit = 50;
    int budget_ms = 60000;
    bool lenient = false;
};

void check_limits(int turn_limit, int budget_ms) {
    if (turn_limit < 1) throw ConfigError("--turn-limit must be >= 1");
    if (budget_ms < 1) throw ConfigError("--budget-ms must be >= 1");
}

int cmd_play(const PlayArgs& args) {
    check_limits(args.turn_limit, args.budget_ms);
    const auto set = load_set_arg(args.cards_path);
    const AgentDefaults defaults = load_defaults(args.config_path);
    const DeckSpec deck_a = load_deck(read_file(args.deck_a_path));
    const DeckSpec deck_b = load_deck(read_file(args.deck_b_path));

    MatchConfig config;
    config.turn_limit = args.turn_limit;
    config.time_budget_ms = args.budget_ms;

    Participant pa = make_participant(args.agent_a_spec, defaults);
    Participant pb = make_participant(args.agent_b_spec, defaults);
    auto agent_a = pa.make_agent();
    auto agent_b = pb.make_agent();
    agent_a->initialize_agent();
    agent_b->initialize_agent();

    DriverOptions opts;
    opts.illegal_policy =
        args.lenient ? IllegalActionPolicy::ForceEndTurn : IllegalActionPolicy::Loss;

    const GameRecord record =
        play_game(*agent_a, *agent_b, deck_a, deck_b, set, config, args.seed, opts);

    agent_a->finalize_agent();
    agent_b->finalize_agent();

    const GameResult& r = record.result;
    std::cout << "result: "
              << (r.is_draw() ? std::string("draw")
                              : "winner=" + std::string(r.winner == Seat::First ? pa.name : pb.name))
              << " reason=" << to_string(r.reason) << " turns=" << record.final_turn
              << " seed=" << record.seed << "\n";
    const char* labels[2] = {"first", "second"};
    const std::string names[2] = {pa.name, pb.name};
    for (int i = 0; i < 2; ++i) {
        const AgentGameStats& st = record.agents[i];
        std::cout << labels[i] << " (" << names[i] << "): moves=" << st.moves_made
                  << " total_ms=" << st.total_response_ms << " max_ms=" << st.max_response_ms
                  << " timeouts=" << st.timeouts << " faults=" << st.faults << "\n";
    }

    if (!args.log_path.empty()) write_file(args.log_path, serialize_event_log(record.event_log));

    if (!args.record_path.empty()) {
        ordered_json replay;
        replay["version"] = 1;
        replay["seed"] = record.seed;
        replay["config"] = match_config_to_json(config);
        replay["cardSetVersion"] = set->version();
        replay["deckFirst"] = ordered_json::parse(serialize_deck(deck_a));
        replay["deckSecond"] = ordered_json::parse(serialize_deck(deck_b));
        ordered_json actions = ordered_json::array();
        for (const Action& a : record.actions) actions.push_back(action_to_json(a));
        replay["actions"] = actions;
        ordered_json lines = ordered_json::array();
        for (const GameEvent& e : record.event_log) lines.push_back(event_to_line(e));
        replay["eventLog"] = lines;
        write_file(args.record_path, replay.dump(2) + "\n");
    }

    return r.reason == GameResult::Reason::Forfeit ? kExitFault : kExitOk;
}

// ---------------------------------------------------------------------------
// tournament
// ---------------------------------------------------------------------------

struct TournamentArgs {
    std::string track = "premade";
    std::vector<std::string> agent_specs;
    std::vector<std::string> deck_paths;
    std::string cards_path, config_path, csv_path, json_path;
    std::uint64_t seed = 1;
    int repeats = 1;
    int parallel = 1;
    int turn_limit = 50;
    int budget_ms = 60000;
    bool lenient = false;
};

int cmd_tournament(const TournamentArgs& args) {
    check_limits(args.turn_limit, args.budget_ms);
    if (args.parallel < 1) throw ConfigError("--parallel must be >= 1");
    const auto set = load_set_arg(args.cards_path);
    const AgentDefaults defaults = load_defaults(args.config_path);

    std::vector<Participant> agents;
    for (const std::string& spec : args.agent_specs)
        agents.push_back(make_participant(spec, defaults));
    disambiguate_names(agents);

    std::vector<DeckSpec> decks;
    for (const std::string& path : args.deck_paths) decks.push_back(load_deck(read_file(path)));

    TrackConfig track;
    track.repeats = args.repeats;
    track.base_seed = args.seed;
    track.match.turn_limit = args.turn_limit;
    track.match.time_budget_ms = args.budget_ms;
    track.driver.illegal_policy =
        args.lenient ? IllegalActionPolicy::ForceEndTurn : IllegalActionPolicy::Loss;

    TrackReport report;
    if (args.track == "premade") {
        track.kind = TrackKind::PremadeDeck;
        if (decks.size() != 6)
            throw InvalidTrackConfig("the premade track needs exactly 6 --deck arguments");
        // The first three decks given are the ones "known" in advance.
        for (std::size_t i = 0; i < decks.size(); ++i)
            track.decks.push_back({decks[i], i < 3});
        report = run_premade_track(agents, track, set, args.parallel);
    } else if (args.track == "userdeck") {
        track.kind = TrackKind::UserCreatedDeck;
        report = run_user_deck_track(agents, decks, track, set, args.parallel);
    } else {
        throw InvalidTrackConfig("unknown track '" + args.track + "'");
    }

    for (const std::string& note : report.disqualified)
        std::cout << "disqualified: " << note << "\n";
    std::cout << ranking_to_text(report.ranking);
    if (!args.csv_path.empty()) write_file(args.csv_path, report_to_csv(report));
    if (!args.json_path.empty()) write_file(args.json_path, report_to_json(report));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// validate-deck / list-cards / replay
// ---------------------------------------------------------------------------

int cmd_validate_deck(const std::string& deck_path, const std::string& cards_path) {
    const auto set = load_set_arg(cards_path);
    const DeckSpec deck = load_deck(read_file(deck_path));
    const auto report = validate_deck(deck, *set);
    if (report.empty()) {
        std::cout << "OK\n";
        return kExitOk;
    }
    for (const DeckViolation& v : report) std::cout << v.describe() << "\n";
    return kExitInvalid;
}

int cmd_list_cards(const std::string& cards_path, const std::string& class_filter,
                   const std::string& kind_filter, bool as_json) {
    const auto set = load_set_arg(cards_path);
    if (as_json) {
        std::cout << serialize_card_set(*set);
        return kExitOk;
    }
    std::optional<HeroClass> cls;
    if (!class_filter.empty()) {
        cls = hero_class_from_string(class_filter);
        if (!cls) throw ConfigError("unknown class '" + class_filter + "'");
    }
    std::optional<CardKind> kind;
    if (!kind_filter.empty()) {
        kind = card_kind_from_string(kind_filter);
        if (!kind) throw ConfigError("unknown kind '" + kind_filter + "'");
    }

    std::vector<const CardDefinition*> cards;
    for (const CardDefinition& c : set->cards()) cards.push_back(&c);
    std::sort(cards.begin(), cards.end(), [](const CardDefinition* a, const CardDefinition* b) {
        return a->id < b->id;
    });

    char line[200];
    std::snprintf(line, sizeof line, "%-18s %-20s %-8s %-7s %4s %4s %4s  %-8s %s\n", "id", "name",
                  "class", "kind", "cost", "atk", "hp", "tribe", "notes");
    std::cout << line;
    for (const CardDefinition* c : cards) {
        if (cls && c->hero_class != *cls) continue;
        if (kind && c->kind != *kind) continue;
        std::string notes;
        if (c->taunt) notes += "taunt ";
        if (c->uncollectible) notes += "token ";
        notes += std::to_string(c->effects.size()) + " fx";
        const bool has_stats = c->kind == CardKind::Minion || c->kind == CardKind::Weapon;
        std::snprintf(line, sizeof line, "%-18s %-20s %-8s %-7s %4d %4s %4s  %-8s %s\n",
                      c->id.c_str(), c->name.c_str(), to_string(c->hero_class),
                      to_string(c->kind), c->mana_cost,
                      has_stats ? std::to_string(c->attack).c_str() : "-",
                      has_stats ? std::to_string(c->health).c_str() : "-", c->tribe.c_str(),
                      notes.c_str());
        std::cout << line;
    }
    return kExitOk;
}

int cmd_replay(const std::string& file_path, const std::string& cards_path, bool print_log) {
    const auto set = load_set_arg(cards_path);
    const ordered_json replay = ordered_json::parse(read_file(file_path), nullptr, false);
    if (replay.is_discarded() || !replay.is_object())
        throw ConfigError("replay file is not valid JSON: " + file_path);
    if (replay.value("version", 0) != 1) throw ConfigError("unsupported replay version");
    if (replay.value("cardSetVersion", "") != set->version())
        throw ConfigError("replay was recorded with card set '" +
                          replay.value("cardSetVersion", "") + "', current is '" +
                          set->version() + "'");

    const MatchConfig config = match_config_from_json(replay.at("config"));
    const DeckSpec deck_first = load_deck(replay.at("deckFirst").dump());
    const DeckSpec deck_second = load_deck(replay.at("deckSecond").dump());
    const std::uint64_t seed = replay.at("seed").get<std::uint64_t>();

    GameState state = new_game(deck_first, deck_second, set, config, seed);
    for (std::size_t i = 0; i < replay.at("actions").size(); ++i) {
        try {
            apply_action_in_place(state, action_from_json(replay["actions"][i]));
        } catch (const std::exception& e) {
            std::cout << "mismatch: action " << i << " failed to apply: " << e.what() << "\n";
            return kExitInvalid;
        }
    }

    std::vector<std::string> recorded;
    for (const auto& l : replay.at("eventLog")) recorded.push_back(l.get<std::string>());
    std::vector<std::string> actual;
    for (const GameEvent& e : state.events) actual.push_back(event_to_line(e));

    if (print_log)
        for (const std::string& l : actual) std::cout << l << "\n";

    if (recorded.size() != actual.size()) {
        std::cout << "mismatch: recorded " << recorded.size() << " events, replay produced "
                  << actual.size() << "\n";
        return kExitInvalid;
    }
    for (std::size_t i = 0; i < recorded.size(); ++i) {
        if (recorded[i] != actual[i]) {
            std::cout << "mismatch at event " << i << ":\n  recorded: " << recorded[i]
                      << "\n  replayed: " << actual[i] << "\n";
            return kExitInvalid;
        }
    }
    std::cout << "verified: " << actual.size() << " events match\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ccgsim: a desk-scale collectible card game engine and agent arena"};
    app.require_subcommand(1);

    PlayArgs play;
    CLI::App* play_cmd = app.add_subcommand("play", "play one game between two agents");
    play_cmd->add_option("--agent-a", play.agent_a_spec, "agent spec for side A")->required();
    play_cmd->add_option("--agent-b", play.agent_b_spec, "agent spec for side B")->required();
    play_cmd->add_option("--deck-a", play.deck_a_path, "deck file for side A")->required();
    play_cmd->add_option("--deck-b", play.deck_b_path, "deck file for side B")->required();
    play_cmd->add_option("--cards", play.cards_path, "card set file (default: builtin)");
    play_cmd->add_option("--config", play.config_path, "agent defaults config file");
    play_cmd->add_option("--seed", play.seed, "game seed (default 1)");
    play_cmd->add_option("--turn-limit", play.turn_limit, "turn limit (default 50)");
    play_cmd->add_option("--budget-ms", play.budget_ms, "per-turn budget in ms (default 60000)");
    play_cmd->add_option("--log", play.log_path, "write the event log (JSON lines)");
    play_cmd->add_option("--record", play.record_path, "write a replay file");
    play_cmd->add_flag("--lenient", play.lenient, "force EndTurn on illegal actions");

    TournamentArgs tour;
    CLI::App* tour_cmd = app.add_subcommand("tournament", "run a competition track");
    tour_cmd->add_option("--track", tour.track, "premade or userdeck")->required();
    tour_cmd->add_option("--agent", tour.agent_specs, "agent spec (repeat per entrant)")
        ->required();
    tour_cmd->add_option("--deck", tour.deck_paths,
                         "deck file (premade: 6, first 3 are the known ones; userdeck: one per "
                         "agent)")
        ->required();
    tour_cmd->add_option("--cards", tour.cards_path, "card set file (default: builtin)");
    tour_cmd->add_option("--config", tour.config_path, "agent defaults config file");
    tour_cmd->add_option("--repeats", tour.repeats, "repeats per scheduled match (default 1)");
    tour_cmd->add_option("--seed", tour.seed, "base seed (default 1)");
    tour_cmd->add_option("--parallel", tour.parallel, "worker threads (default 1)");
    tour_cmd->add_option("--turn-limit", tour.turn_limit, "turn limit (default 50)");
    tour_cmd->add_option("--budget-ms", tour.budget_ms, "per-turn budget in ms (default 60000)");
    tour_cmd->add_option("--csv", tour.csv_path, "write per-game results CSV");
    tour_cmd->add_option("--json", tour.json_path, "write the ranking summary JSON");
    tour_cmd->add_flag("--lenient", tour.lenient, "force EndTurn on illegal actions");

    std::string vd_deck, vd_cards;
    CLI::App* vd_cmd = app.add_subcommand("validate-deck", "check a deck file against a card set");
    vd_cmd->add_option("--deck", vd_deck, "deck file")->required();
    vd_cmd->add_option("--cards", vd_cards, "card set file (default: builtin)");

    std::string lc_cards, lc_class, lc_kind;
    bool lc_json = false;
    CLI::App* lc_cmd = app.add_subcommand("list-cards", "list the card set");
    lc_cmd->add_option("--cards", lc_cards, "card set file (default: builtin)");
    lc_cmd->add_option("--class", lc_class, "filter by class");
    lc_cmd->add_option("--kind", lc_kind, "filter by kind");
    lc_cmd->add_flag("--json", lc_json, "print the full card file JSON");

    std::string rp_file, rp_cards;
    bool rp_print = false;
    CLI::App* rp_cmd = app.add_subcommand("replay", "re-execute a replay file and verify it");
    rp_cmd->add_option("--file", rp_file, "replay file")->required();
    rp_cmd->add_option("--cards", rp_cards, "card set file (default: builtin)");
    rp_cmd->add_flag("--print", rp_print, "print the replayed event log");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (play_cmd->parsed()) return cmd_play(play);
        if (tour_cmd->parsed()) return cmd_tournament(tour);
        if (vd_cmd->parsed()) return cmd_validate_deck(vd_deck, vd_cards);
        if (lc_cmd->parsed()) return cmd_list_cards(lc_cards, lc_class, lc_kind, lc_json);
        if (rp_cmd->parsed()) return cmd_replay(rp_file, rp_cards, rp_print);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DuplicateId& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidDeck& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
