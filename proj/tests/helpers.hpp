#pragma once

// Shared fixtures for the test suites: deck builders over the builtin
// set, an independent state-invariant checker, and random playout
// drivers used by the fuzz and determinism tests.

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccg/agents_baseline.hpp"
#include "ccg/engine.hpp"
#include "ccg/observation.hpp"

namespace ccg::testing {

inline std::shared_ptr<const CardSet> builtin_set() {
    return {std::shared_ptr<const CardSet>(), &builtin_card_set()};
}

inline DeckSpec two_of_each(std::string name, HeroClass cls,
                            const std::vector<std::string>& ids) {
    DeckSpec deck;
    deck.name = std::move(name);
    deck.hero_class = cls;
    for (const std::string& id : ids) {
        deck.card_ids.push_back(id);
        deck.card_ids.push_back(id);
    }
    return deck;
}

// 30 vanilla-ish neutral cards; legal for any class.
inline DeckSpec neutral_deck(HeroClass cls = HeroClass::Rogue) {
    return two_of_each("neutral-mix", cls,
                       {"scrappy_squire", "stone_porter", "caravan_guard", "oak_golem",
                        "hill_ogre", "bog_behemoth", "war_colossus", "elder_wyrm",
                        "ancient_titan", "world_breaker", "tidepool_scout", "brine_raider",
                        "reef_chanter", "tide_caller", "shieldgrub"});
}

// Class decks that exercise spells, secrets, weapons, auras, battlecries
// and deathrattles; used by the fuzz suites.
inline DeckSpec mage_deck() {
    return two_of_each("mage-mix", HeroClass::Mage,
                       {"flame_lance", "ring_of_cinders", "mana_bloom", "spark_adept",
                        "glacial_snare", "echo_ward", "stone_sling", "scrying_orb", "ember_imp",
                        "field_medic", "bone_archer", "banner_captain", "clay_shambler",
                        "rot_hound", "rusty_hatchet"});
}

inline DeckSpec warrior_deck() {
    return two_of_each("warrior-mix", HeroClass::Warrior,
                       {"iron_cleaver", "oath_blade", "sharpened_edge", "battle_horn",
                        "pit_brawler", "spiked_barricade", "rot_hound", "lore_keeper",
                        "gate_warden", "ivory_tortoise", "ember_imp", "stone_sling",
                        "rust_ritual", "shieldgrub", "tidepool_scout"});
}

inline DeckSpec priest_deck() {
    return two_of_each("priest-mix", HeroClass::Priest,
                       {"soothing_light", "inner_fortitude", "banish", "cloister_guard",
                        "ambush_ward", "field_medic", "scrying_orb", "clay_shambler",
                        "banner_captain", "reef_chanter", "brine_raider", "caravan_guard",
                        "hill_ogre", "gate_warden", "stone_sling"});
}

// ---------------------------------------------------------------------------
// Independent invariant oracle. Raises std::logic_error with a message
// on the first violation; the checks re-derive the rules rather than
// calling back into engine internals.
// ---------------------------------------------------------------------------

inline void check_invariants(const GameState& s) {
    auto fail = [&s](const std::string& what) {
        throw std::logic_error("invariant violation at turn " + std::to_string(s.turn_number) +
                               ": " + what);
    };

    std::set<int> seen_instances;
    auto note_instance = [&](int id) {
        if (!seen_instances.insert(id).second)
            fail("instance " + std::to_string(id) + " appears in two zones");
    };

    for (Seat seat : {Seat::First, Seat::Second}) {
        const PlayerState& p = s.player(seat);

        if (p.mana_current < 0 || p.mana_current > p.mana_max || p.mana_max > 10)
            fail("mana bounds broken: " + std::to_string(p.mana_current) + "/" +
                 std::to_string(p.mana_max));

        if (static_cast<int>(p.hand.size()) > s.config.hand_limit) fail("hand over limit");
        if (static_cast<int>(p.board.size()) > s.config.board_limit) fail("board over limit");

        if (p.weapon && p.weapon->durability < 1) fail("equipped weapon with durability < 1");

        for (const MinionInstance& m : p.board) {
            if (effective_health(s, seat, m) <= 0) fail("dead minion still on board");
            if (m.current_health > m.max_health) fail("current health above max");
        }

        // Zone conservation: every starting card plus every summoned
        // token is in exactly one zone.
        std::size_t zone_total = p.deck.size() + p.hand.size() + p.board.size() +
                                 p.graveyard.size() + p.secrets.size() + (p.weapon ? 1 : 0);
        const std::size_t expected = 30 + static_cast<std::size_t>(p.tokens_summoned);
        if (zone_total != expected)
            fail("zone conservation: " + std::to_string(zone_total) + " cards, expected " +
                 std::to_string(expected));

        for (const CardInstance& c : p.deck) note_instance(c.instance_id);
        for (const CardInstance& c : p.hand) note_instance(c.instance_id);
        for (const MinionInstance& m : p.board) note_instance(m.instance_id);
        for (const CardInstance& c : p.graveyard) note_instance(c.instance_id);
        for (const SecretInstance& sec : p.secrets) note_instance(sec.instance_id);
        if (p.weapon) note_instance(p.weapon->instance_id);

        if (p.fatigue_counter < 0) fail("negative fatigue counter");
    }

    if (!s.result && s.turn_number > s.config.turn_limit) fail("turn number past limit w/o result");
}

// ---------------------------------------------------------------------------
// Random playouts at engine level (no driver, no budget).
// ---------------------------------------------------------------------------

struct PlayoutResult {
    GameState state;
    int actions_applied = 0;
};

// Plays random legal actions until the game ends or `max_actions` is
// hit. Checks invariants after every action when `check` is set.
inline PlayoutResult random_playout(const DeckSpec& deck_a, const DeckSpec& deck_b,
                                    std::uint64_t seed, bool check = true,
                                    int max_actions = 100000) {
    GameState s = new_game(deck_a, deck_b, builtin_set(), MatchConfig{}, seed);
    Rng picker(derive_seed(seed, {0xbeefull}));
    int applied = 0;
    while (!game_result(s) && applied < max_actions) {
        const std::vector<Action> options = legal_actions(s);
        const Action choice = options[picker.uniform(static_cast<std::uint32_t>(options.size()))];
        apply_action_in_place(s, choice);
        ++applied;
        if (check) check_invariants(s);
    }
    return {std::move(s), applied};
}

// Replaces the opponent's hidden zones with different same-sized
// content: hand and deck identities are rotated through other
// collectible cards, the deck is reversed, and secret identities are
// swapped for other secrets. Visible zones are untouched.
inline GameState mutate_hidden_zones(const GameState& s, Seat viewer, std::uint64_t salt) {
    GameState t = s;
    PlayerState& foe = t.player(other(viewer));
    Rng rng(derive_seed(salt, {0x5a17ull}));

    std::vector<std::string> pool;
    std::vector<std::string> secret_pool;
    for (const CardDefinition& c : t.set->cards()) {
        if (c.uncollectible) continue;
        pool.push_back(c.id);
        if (c.kind == CardKind::Secret) secret_pool.push_back(c.id);
    }

    for (CardInstance& c : foe.hand) {
        c.card_id = pool[rng.uniform(static_cast<std::uint32_t>(pool.size()))];
        c.instance_id = t.next_instance++;
    }
    std::reverse(foe.deck.begin(), foe.deck.end());
    for (CardInstance& c : foe.deck)
        c.card_id = pool[rng.uniform(static_cast<std::uint32_t>(pool.size()))];

    std::vector<std::string> picks = secret_pool;
    rng.shuffle(picks);
    for (std::size_t i = 0; i < foe.secrets.size(); ++i) {
        const CardDefinition& def = t.set->at(picks[i % picks.size()]);
        foe.secrets[i].card_id = def.id;
        foe.secrets[i].condition = *def.effects.front().condition;
        foe.secrets[i].instance_id = t.next_instance++;
    }
    return t;
}

// A mid-game state reached after `depth` random actions (game may end
// earlier; callers should check).
inline GameState random_midgame(std::uint64_t seed, int depth) {
    GameState s = new_game(mage_deck(), warrior_deck(), builtin_set(), MatchConfig{}, seed);
    Rng picker(derive_seed(seed, {0x111ull}));
    for (int i = 0; i < depth && !game_result(s); ++i) {
        const std::vector<Action> options = legal_actions(s);
        apply_action_in_place(s, options[picker.uniform(static_cast<std::uint32_t>(options.size()))]);
    }
    return s;
}

}  // namespace ccg::testing
