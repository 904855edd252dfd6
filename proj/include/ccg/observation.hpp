#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ccg/engine.hpp"

namespace ccg {

// ---------------------------------------------------------------------------
// Per-seat partial observation: the viewer's full information, the
// opponent's visible board state, and counts-only placeholders for the
// opponent's hand, deck, and secrets. Observations are immutable
// snapshots, safe to hand to agent code on any thread.
// ---------------------------------------------------------------------------

// Board minion as seen in an observation: the stored stats plus the
// aura-adjusted values (derivable from the visible board, included for
// convenience).
struct MinionView {
    MinionInstance minion;
    int attack = 0;      // effective, aura-inclusive
    int health = 0;      // effective current
    int max_health = 0;  // effective max

    bool operator==(const MinionView&) const = default;
};

struct OwnView {
    HeroClass hero_class = HeroClass::Mage;
    int hero_health = 0;
    bool hero_power_used = false;
    bool hero_attacked = false;
    std::optional<WeaponState> weapon;
    int mana_current = 0;
    int mana_max = 0;
    std::vector<CardInstance> hand;  // order known to the owner
    std::vector<MinionView> board;
    std::vector<SecretInstance> secrets;
    std::vector<std::string> graveyard;  // card ids, play order
    int fatigue_counter = 0;
};

// Everything the viewer may know about the opponent. Hand, deck, and
// secret identities are reduced to counts; the serialized form shows
// them as "dummy" placeholders.
struct OpponentView {
    HeroClass hero_class = HeroClass::Mage;
    int hero_health = 0;
    int mana_current = 0;
    int mana_max = 0;
    std::optional<WeaponState> weapon;
    std::vector<MinionView> board;
    int hand_count = 0;
    int deck_count = 0;
    int secret_count = 0;
};

struct Observation {
    Seat viewer = Seat::First;
    int turn_number = 0;
    MatchConfig config;
    OwnView own;
    OpponentView opponent;
    std::vector<std::string> own_deck_remaining;  // sorted multiset; order hidden
    std::vector<Action> options;                  // empty unless the viewer is active
};

// Builds the masked view. Options equal legal_actions(state) when the
// viewer is the active seat and the game is not over, empty otherwise.
Observation observe(const GameState& state, Seat viewer);

// Canonical JSON with fixed field order; byte-comparable.
std::string serialize_observation(const Observation& obs);

// Samples a full game state consistent with the observation: the
// viewer's zones are rebuilt exactly (deck order re-randomized from the
// multiset), the opponent's hidden hand and deck are filled uniformly
// from the collectible cards of the opponent's class pool plus Neutral,
// and opponent secrets are sampled without replacement from that pool's
// secrets. Repeated calls with different seeds vary only in hidden
// content. Throws InconsistentObservation.
GameState determinize(const Observation& obs, std::shared_ptr<const CardSet> set,
                      std::uint64_t rng_seed);

}  // namespace ccg
