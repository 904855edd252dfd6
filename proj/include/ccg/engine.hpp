#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ccg/cards.hpp"
#include "ccg/rng.hpp"
#include "json.hpp"

namespace ccg {

// ---------------------------------------------------------------------------
// Full-information game state machine: turns, mana, draw/fatigue, card
// play, combat, secrets, weapons, win/draw detection, legal actions,
// and the append-only event log.
//
// All operations are deterministic transitions of (state, action) with
// randomness drawn only from the state's own seeded generator.
// ---------------------------------------------------------------------------

enum class Seat { First, Second };

inline Seat other(Seat s) { return s == Seat::First ? Seat::Second : Seat::First; }
inline int seat_index(Seat s) { return s == Seat::First ? 0 : 1; }
const char* to_string(Seat s);
std::optional<Seat> seat_from_string(const std::string& s);

// A reference to a hero or a board minion, as used in actions and
// effect targeting. Minions are addressed by instance id, heroes by
// seat.
struct EntityRef {
    enum class Kind { Hero, Minion };
    Kind kind = Kind::Hero;
    Seat seat = Seat::First;  // heroes only
    int instance = -1;        // minions only

    static EntityRef hero(Seat s) { return {Kind::Hero, s, -1}; }
    static EntityRef minion(int instance_id) { return {Kind::Minion, Seat::First, instance_id}; }

    bool is_hero() const { return kind == Kind::Hero; }
    bool is_minion() const { return kind == Kind::Minion; }

    friend bool operator==(const EntityRef& a, const EntityRef& b) {
        if (a.kind != b.kind) return false;
        return a.is_hero() ? a.seat == b.seat : a.instance == b.instance;
    }
};

enum class ActionType { EndTurn, PlayCard, Attack, HeroPower, HeroAttack };

const char* to_string(ActionType t);

// The move alphabet. Board positions are canonically collapsed to
// "append at end", so PlayCard carries no position.
struct Action {
    ActionType type = ActionType::EndTurn;
    int hand_index = -1;              // PlayCard
    int attacker = -1;                // Attack: attacking minion instance
    std::optional<EntityRef> target;  // PlayCard/HeroPower target, Attack/HeroAttack defender

    static Action end_turn() { return {}; }
    static Action play_card(int hand_index, std::optional<EntityRef> target = std::nullopt) {
        return {ActionType::PlayCard, hand_index, -1, target};
    }
    static Action attack(int attacker_instance, EntityRef defender) {
        return {ActionType::Attack, -1, attacker_instance, defender};
    }
    static Action hero_power(std::optional<EntityRef> target = std::nullopt) {
        return {ActionType::HeroPower, -1, -1, target};
    }
    static Action hero_attack(EntityRef defender) {
        return {ActionType::HeroAttack, -1, -1, defender};
    }

    bool operator==(const Action&) const = default;
};

nlohmann::ordered_json action_to_json(const Action& a);
Action action_from_json(const nlohmann::ordered_json& j);

// ---------------------------------------------------------------------------
// State pieces
// ---------------------------------------------------------------------------

// A card sitting in a deck, hand, or graveyard.
struct CardInstance {
    int instance_id = 0;
    std::string card_id;

    bool operator==(const CardInstance&) const = default;
};

struct MinionInstance {
    int instance_id = 0;
    std::string card_id;
    int base_attack = 0;     // attack before auras; permanent buffs land here
    int base_health = 0;     // printed health, kept for reference
    int max_health = 0;      // max before auras; permanent buffs land here
    int current_health = 0;  // damage applies here; never above max_health
    std::string tribe;
    bool taunt = false;
    bool has_aura = false;  // caches "definition carries an Aura effect"
    bool exhausted = true;  // summoning sickness
    int attacks_this_turn = 0;

    bool operator==(const MinionInstance&) const = default;
};

struct WeaponState {
    int instance_id = 0;
    std::string card_id;
    int attack = 0;
    int durability = 0;

    bool operator==(const WeaponState&) const = default;
};

struct SecretInstance {
    int instance_id = 0;
    std::string card_id;
    SecretCondition condition = SecretCondition::EnemyMinionAttacks;

    bool operator==(const SecretInstance&) const = default;
};

struct PlayerState {
    HeroClass hero_class = HeroClass::Mage;
    int hero_health = 30;
    bool hero_power_used = false;
    bool hero_attacked = false;
    std::optional<WeaponState> weapon;
    int mana_current = 0;
    int mana_max = 0;
    std::vector<CardInstance> deck;  // back of the vector is the top (next draw)
    std::vector<CardInstance> hand;
    std::vector<MinionInstance> board;
    std::vector<CardInstance> graveyard;
    std::vector<SecretInstance> secrets;
    int fatigue_counter = 0;
    int tokens_summoned = 0;  // for zone-conservation accounting
};

struct MatchConfig {
    int turn_limit = 50;
    int time_budget_ms = 60000;  // per-turn agent budget
    int hand_limit = 10;
    int board_limit = 7;
    int starting_hand_first = 3;
    int starting_hand_second = 4;

    bool operator==(const MatchConfig&) const = default;
};

struct GameResult {
    enum class Reason { HeroDead, TurnLimit, Forfeit };
    std::optional<Seat> winner;  // empty = draw
    Reason reason = Reason::HeroDead;
    int final_turn = 0;

    bool is_draw() const { return !winner.has_value(); }
    bool operator==(const GameResult&) const = default;
};

const char* to_string(GameResult::Reason r);

enum class EventKind {
    TurnStarted,
    CardDrawn,
    FatigueDamage,
    CardPlayed,
    MinionSummoned,
    AttackResolved,
    DamageDealt,
    Healed,
    MinionDied,
    SecretRevealed,
    WeaponBroken,
    TurnEnded,
    GameEnded,
};

const char* to_string(EventKind k);

struct GameEvent {
    int ordinal = 0;
    EventKind kind = EventKind::TurnStarted;
    nlohmann::ordered_json payload;
};

// One JSON line per event, field order fixed: ordinal, kind, payload.
std::string event_to_line(const GameEvent& e);
std::string serialize_event_log(const std::vector<GameEvent>& log);

nlohmann::ordered_json match_config_to_json(const MatchConfig& c);
MatchConfig match_config_from_json(const nlohmann::ordered_json& j);

struct GameState {
    int turn_number = 0;           // 1 = first player's first turn
    Seat active_seat = Seat::First;
    std::array<PlayerState, 2> players;
    Rng rng{0};
    MatchConfig config;
    std::optional<GameResult> result;
    std::shared_ptr<const CardSet> set;
    std::vector<GameEvent> events;
    bool logging = true;  // rollouts switch this off; no gameplay effect
    int next_instance = 1;

    PlayerState& player(Seat s) { return players[seat_index(s)]; }
    const PlayerState& player(Seat s) const { return players[seat_index(s)]; }
    const CardDefinition& definition(const std::string& id) const { return set->at(id); }
};

// ---------------------------------------------------------------------------
// Hero powers: fixed per class, cost 2 mana, once per turn.
// ---------------------------------------------------------------------------

enum class HeroPowerKind { DealDamage, Heal, SummonRecruit };

inline constexpr int kHeroPowerCost = 2;
inline constexpr int kHeroPowerDamage = 1;
inline constexpr int kHeroPowerHeal = 2;
inline constexpr const char* kRecruitTokenId = "recruit_token";
inline constexpr int kHeroStartingHealth = 30;
inline constexpr int kManaCap = 10;

HeroPowerKind hero_power_for(HeroClass c);

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Builds a fresh game: decks validated and shuffled with the seeded
// generator (first player's deck first), starting hands drawn, and the
// first player's turn begun. Throws InvalidDeck / UnknownCard.
GameState new_game(const DeckSpec& deck_first, const DeckSpec& deck_second,
                   std::shared_ptr<const CardSet> set, const MatchConfig& config,
                   std::uint64_t seed);

// Every action the active player may take, exactly once each, in a
// fixed canonical order (EndTurn, plays by hand index, attacks by board
// order, hero power, hero attack). Throws GameAlreadyOver.
std::vector<Action> legal_actions(const GameState& state);

// Applies an action in place; the state must be treated as consumed on
// failure. Throws IllegalAction / GameAlreadyOver.
void apply_action_in_place(GameState& state, const Action& action);

// Fast path for search code: applies without re-deriving the legality
// check. The action must come from legal_actions on this exact state
// (or on one with identical visible zones); anything else corrupts the
// state.
void apply_action_unchecked(GameState& state, const Action& action);

// Pure transition: copies, applies, returns the successor.
GameState apply_action(const GameState& state, const Action& action);

// Win / draw detection; also consults the cached result.
std::optional<GameResult> game_result(const GameState& state);

// Internal steps, exposed for tests and the driver.
void begin_turn(GameState& state);            // ramps mana, resets flags, draws
void draw_card(GameState& state, Seat seat);  // draw or fatigue
void resolve_attack(GameState& state, const EntityRef& attacker, const EntityRef& defender);

// Aura-aware stat views. Auras are derived statelessly from the
// friendly board (a matching aura source buffs itself too).
int effective_attack(const GameState& state, Seat owner, const MinionInstance& m);
int effective_max_health(const GameState& state, Seat owner, const MinionInstance& m);
int effective_health(const GameState& state, Seat owner, const MinionInstance& m);

// Locates a minion by instance id; returns nullptr when absent.
const MinionInstance* find_minion(const GameState& state, int instance_id,
                                  Seat* owner = nullptr);

}  // namespace ccg
