#include "ccg/observation.hpp"

#include <set>

#include "ccg/errors.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace ccg;
using namespace ccg::testing;

TEST_CASE("the observation hides opponent hand and deck identities") {
    const GameState s = random_midgame(31, 14);
    if (game_result(s)) return;
    const Seat viewer = s.active_seat;
    const Observation obs = observe(s, viewer);

    CHECK(obs.opponent.hand_count == static_cast<int>(s.player(other(viewer)).hand.size()));
    CHECK(obs.opponent.deck_count == static_cast<int>(s.player(other(viewer)).deck.size()));
    CHECK(obs.opponent.secret_count == static_cast<int>(s.player(other(viewer)).secrets.size()));

    const std::string serialized = serialize_observation(obs);
    // No opponent hand/deck identity may appear outside the visible
    // zones; the dummy token stands in for every hidden card.
    CHECK(serialized.find("dummy") != std::string::npos);
}

TEST_CASE("own information is complete and deck order is erased") {
    GameState s = new_game(mage_deck(), warrior_deck(), builtin_set(), MatchConfig{}, 5);
    const Observation obs = observe(s, Seat::First);
    CHECK(obs.own.hand.size() == s.players[0].hand.size());
    for (std::size_t i = 0; i < obs.own.hand.size(); ++i)
        CHECK(obs.own.hand[i].card_id == s.players[0].hand[i].card_id);

    CHECK(obs.own_deck_remaining.size() == s.players[0].deck.size());
    CHECK(std::is_sorted(obs.own_deck_remaining.begin(), obs.own_deck_remaining.end()));

    std::multiset<std::string> expected;
    for (const CardInstance& c : s.players[0].deck) expected.insert(c.card_id);
    CHECK(std::multiset<std::string>(obs.own_deck_remaining.begin(),
                                     obs.own_deck_remaining.end()) == expected);
}

TEST_CASE("options match legal_actions exactly for the active seat") {
    const GameState s = random_midgame(87, 9);
    if (game_result(s)) return;
    const Observation active_view = observe(s, s.active_seat);
    CHECK(active_view.options == legal_actions(s));
    const Observation passive_view = observe(s, other(s.active_seat));
    CHECK(passive_view.options.empty());
}

TEST_CASE("replacing hidden opponent content leaves the observation byte-identical") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 40 && checked < 25; ++seed) {
        const GameState s = random_midgame(seed, static_cast<int>(8 + seed % 25));
        if (game_result(s)) continue;
        ++checked;
        const Seat viewer = s.active_seat;
        const std::string baseline = serialize_observation(observe(s, viewer));
        for (std::uint64_t salt = 1; salt <= 3; ++salt) {
            const GameState mutated = mutate_hidden_zones(s, viewer, seed * 100 + salt);
            CHECK(serialize_observation(observe(mutated, viewer)) == baseline);
        }
    }
    CHECK(checked == 25);
}

TEST_CASE("determinize preserves counts and visible state") {
    const GameState s = random_midgame(55, 16);
    if (game_result(s)) return;
    const Seat viewer = s.active_seat;
    const Observation obs = observe(s, viewer);
    const GameState d = determinize(obs, builtin_set(), 123);

    const PlayerState& foe = d.player(other(viewer));
    CHECK(static_cast<int>(foe.hand.size()) == obs.opponent.hand_count);
    CHECK(static_cast<int>(foe.deck.size()) == obs.opponent.deck_count);
    CHECK(static_cast<int>(foe.secrets.size()) == obs.opponent.secret_count);
    CHECK(foe.hero_health == obs.opponent.hero_health);
    CHECK(d.player(viewer).hero_health == obs.own.hero_health);
    CHECK(d.active_seat == s.active_seat);
    CHECK(d.turn_number == s.turn_number);

    // Sampled cards respect the class pool.
    for (const CardInstance& c : foe.hand) {
        const CardDefinition& def = d.definition(c.card_id);
        CHECK((def.hero_class == HeroClass::Neutral || def.hero_class == foe.hero_class));
        CHECK(!def.uncollectible);
    }
}

TEST_CASE("masking round-trip: observe(determinize(obs)) == obs") {
    int checked = 0;
    for (std::uint64_t seed = 10; seed < 40 && checked < 10; ++seed) {
        const GameState s = random_midgame(seed, static_cast<int>(6 + seed % 20));
        if (game_result(s)) continue;
        ++checked;
        const Seat viewer = s.active_seat;
        const Observation obs = observe(s, viewer);
        const std::string canonical = serialize_observation(obs);
        for (std::uint64_t det_seed : {1ull, 9ull, 77ull}) {
            const GameState d = determinize(obs, builtin_set(), det_seed);
            CHECK(serialize_observation(observe(d, viewer)) == canonical);
        }
    }
    CHECK(checked == 10);
}

TEST_CASE("determinizations vary only in hidden content across seeds") {
    // Find a midgame state where the opponent still holds cards.
    GameState s = random_midgame(71, 12);
    REQUIRE(!game_result(s));
    const Seat viewer = s.active_seat;
    const Observation obs = observe(s, viewer);
    REQUIRE(obs.opponent.hand_count + obs.opponent.deck_count > 0);

    std::set<std::string> hidden_signatures;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const GameState d = determinize(obs, builtin_set(), seed);
        std::string sig;
        for (const CardInstance& c : d.player(other(viewer)).hand) sig += c.card_id + ",";
        sig += "|";
        for (const CardInstance& c : d.player(other(viewer)).deck) sig += c.card_id + ",";
        hidden_signatures.insert(sig);
        CHECK(serialize_observation(observe(d, viewer)) == serialize_observation(obs));
    }
    // Uniform sampling over dozens of candidates: collisions across 100
    // seeds are possible, identical-everywhere is not.
    CHECK(hidden_signatures.size() > 50);
}

TEST_CASE("determinize rejects impossible observations") {
    const GameState s = random_midgame(91, 10);
    if (game_result(s)) return;
    Observation obs = observe(s, s.active_seat);
    obs.opponent.secret_count = 100;  // more than the distinct secrets in the pool
    CHECK_THROWS_AS(determinize(obs, builtin_set(), 1), InconsistentObservation);
    obs.opponent.secret_count = -1;
    CHECK_THROWS_AS(determinize(obs, builtin_set(), 1), InconsistentObservation);
}

TEST_CASE("all dummies are indistinguishable") {
    // The placeholder is one reserved token; every hidden slot renders
    // to exactly the same string.
    const GameState s = random_midgame(12, 10);
    if (game_result(s)) return;
    const Observation obs = observe(s, s.active_seat);
    const std::string serialized = serialize_observation(obs);
    (void)obs;
    std::size_t at = 0;
    int count = 0;
    while ((at = serialized.find("\"dummy\"", at)) != std::string::npos) {
        ++count;
        at += 7;
    }
    CHECK(count == obs.opponent.hand_count + obs.opponent.secret_count);
}
