#include "ccg/observation.hpp"

#include <algorithm>

#include "ccg/errors.hpp"
#include "json.hpp"

namespace ccg {

using nlohmann::ordered_json;

namespace {

MinionView make_view(const GameState& s, Seat owner, const MinionInstance& m) {
    MinionView v;
    v.minion = m;
    v.attack = effective_attack(s, owner, m);
    v.health = effective_health(s, owner, m);
    v.max_health = effective_max_health(s, owner, m);
    return v;
}

}  // namespace

Observation observe(const GameState& state, Seat viewer) {
    const Seat opp = other(viewer);
    const PlayerState& own = state.player(viewer);
    const PlayerState& foe = state.player(opp);

    Observation obs;
    obs.viewer = viewer;
    obs.turn_number = state.turn_number;
    obs.config = state.config;

    obs.own.hero_class = own.hero_class;
    obs.own.hero_health = own.hero_health;
    obs.own.hero_power_used = own.hero_power_used;
    obs.own.hero_attacked = own.hero_attacked;
    obs.own.weapon = own.weapon;
    obs.own.mana_current = own.mana_current;
    obs.own.mana_max = own.mana_max;
    obs.own.hand = own.hand;
    for (const MinionInstance& m : own.board) obs.own.board.push_back(make_view(state, viewer, m));
    obs.own.secrets = own.secrets;
    for (const CardInstance& c : own.graveyard) obs.own.graveyard.push_back(c.card_id);
    obs.own.fatigue_counter = own.fatigue_counter;

    obs.opponent.hero_class = foe.hero_class;
    obs.opponent.hero_health = foe.hero_health;
    obs.opponent.mana_current = foe.mana_current;
    obs.opponent.mana_max = foe.mana_max;
    obs.opponent.weapon = foe.weapon;
    for (const MinionInstance& m : foe.board) obs.opponent.board.push_back(make_view(state, opp, m));
    obs.opponent.hand_count = static_cast<int>(foe.hand.size());
    obs.opponent.deck_count = static_cast<int>(foe.deck.size());
    obs.opponent.secret_count = static_cast<int>(foe.secrets.size());

    for (const CardInstance& c : own.deck) obs.own_deck_remaining.push_back(c.card_id);
    std::sort(obs.own_deck_remaining.begin(), obs.own_deck_remaining.end());

    if (viewer == state.active_seat && !game_result(state)) obs.options = legal_actions(state);
    return obs;
}

// ---------------------------------------------------------------------------
// Canonical serialization
// ---------------------------------------------------------------------------

namespace {

ordered_json weapon_to_json(const std::optional<WeaponState>& w) {
    if (!w) return nullptr;
    ordered_json j;
    j["card"] = w->card_id;
    j["instance"] = w->instance_id;
    j["attack"] = w->attack;
    j["durability"] = w->durability;
    return j;
}

ordered_json minion_view_to_json(const MinionView& v) {
    ordered_json j;
    j["card"] = v.minion.card_id;
    j["instance"] = v.minion.instance_id;
    j["attack"] = v.attack;
    j["health"] = v.health;
    j["maxHealth"] = v.max_health;
    j["baseAttack"] = v.minion.base_attack;
    j["baseHealth"] = v.minion.base_health;
    j["storedMaxHealth"] = v.minion.max_health;
    j["storedHealth"] = v.minion.current_health;
    j["tribe"] = v.minion.tribe;
    j["taunt"] = v.minion.taunt;
    j["exhausted"] = v.minion.exhausted;
    j["attacksThisTurn"] = v.minion.attacks_this_turn;
    return j;
}

}  // namespace

std::string serialize_observation(const Observation& obs) {
    ordered_json j;
    j["viewer"] = to_string(obs.viewer);
    j["turn"] = obs.turn_number;
    j["config"] = match_config_to_json(obs.config);

    ordered_json own;
    own["class"] = to_string(obs.own.hero_class);
    own["heroHealth"] = obs.own.hero_health;
    own["manaCurrent"] = obs.own.mana_current;
    own["manaMax"] = obs.own.mana_max;
    own["heroPowerUsed"] = obs.own.hero_power_used;
    own["heroAttacked"] = obs.own.hero_attacked;
    own["fatigue"] = obs.own.fatigue_counter;
    own["weapon"] = weapon_to_json(obs.own.weapon);
    ordered_json hand = ordered_json::array();
    for (const CardInstance& c : obs.own.hand) {
        ordered_json e;
        e["card"] = c.card_id;
        e["instance"] = c.instance_id;
        hand.push_back(e);
    }
    own["hand"] = hand;
    ordered_json board = ordered_json::array();
    for (const MinionView& v : obs.own.board) board.push_back(minion_view_to_json(v));
    own["board"] = board;
    ordered_json secrets = ordered_json::array();
    for (const SecretInstance& sec : obs.own.secrets) {
        ordered_json e;
        e["card"] = sec.card_id;
        e["instance"] = sec.instance_id;
        e["condition"] = to_string(sec.condition);
        secrets.push_back(e);
    }
    own["secrets"] = secrets;
    own["graveyard"] = obs.own.graveyard;
    own["deck"] = obs.own_deck_remaining;  // sorted multiset, order hidden
    j["own"] = own;

    ordered_json opp;
    opp["class"] = to_string(obs.opponent.hero_class);
    opp["heroHealth"] = obs.opponent.hero_health;
    opp["manaCurrent"] = obs.opponent.mana_current;
    opp["manaMax"] = obs.opponent.mana_max;
    opp["weapon"] = weapon_to_json(obs.opponent.weapon);
    ordered_json opp_board = ordered_json::array();
    for (const MinionView& v : obs.opponent.board) opp_board.push_back(minion_view_to_json(v));
    opp["board"] = opp_board;
    // Hidden zones appear as indistinguishable dummies.
    opp["hand"] = std::vector<std::string>(obs.opponent.hand_count, kDummyCardId);
    opp["handCount"] = obs.opponent.hand_count;
    opp["deckCount"] = obs.opponent.deck_count;
    opp["secrets"] = std::vector<std::string>(obs.opponent.secret_count, kDummyCardId);
    opp["secretCount"] = obs.opponent.secret_count;
    j["opponent"] = opp;

    ordered_json options = ordered_json::array();
    for (const Action& a : obs.options) options.push_back(action_to_json(a));
    j["options"] = options;

    return j.dump();
}

// ---------------------------------------------------------------------------
// Determinization
// ---------------------------------------------------------------------------

GameState determinize(const Observation& obs, std::shared_ptr<const CardSet> set,
                      std::uint64_t rng_seed) {
    if (obs.opponent.hand_count < 0 || obs.opponent.deck_count < 0 ||
        obs.opponent.secret_count < 0)
        throw InconsistentObservation("negative opponent zone count");

    // Hidden-content sampling stream; consumed in a fixed order: own
    // deck shuffle, opponent hand, opponent deck, opponent secrets.
    Rng fill(derive_seed(rng_seed, {0x0b5e77a7u}));

    GameState s;
    s.set = std::move(set);
    s.config = obs.config;
    s.turn_number = obs.turn_number;
    // Turns alternate strictly, first player takes the odd ones.
    s.active_seat = (obs.turn_number % 2 == 1) ? Seat::First : Seat::Second;
    s.logging = false;  // forward-model states do not keep history

    int max_instance = 0;
    auto note = [&max_instance](int id) { max_instance = std::max(max_instance, id); };

    PlayerState& own = s.player(obs.viewer);
    own.hero_class = obs.own.hero_class;
    own.hero_health = obs.own.hero_health;
    own.hero_power_used = obs.own.hero_power_used;
    own.hero_attacked = obs.own.hero_attacked;
    own.weapon = obs.own.weapon;
    if (own.weapon) note(own.weapon->instance_id);
    own.mana_current = obs.own.mana_current;
    own.mana_max = obs.own.mana_max;
    own.hand = obs.own.hand;
    for (const CardInstance& c : own.hand) note(c.instance_id);
    for (const MinionView& v : obs.own.board) {
        own.board.push_back(v.minion);
        note(v.minion.instance_id);
    }
    own.secrets = obs.own.secrets;
    for (const SecretInstance& sec : own.secrets) note(sec.instance_id);
    own.fatigue_counter = obs.own.fatigue_counter;

    PlayerState& foe = s.player(other(obs.viewer));
    foe.hero_class = obs.opponent.hero_class;
    foe.hero_health = obs.opponent.hero_health;
    foe.mana_current = obs.opponent.mana_current;
    foe.mana_max = obs.opponent.mana_max;
    foe.weapon = obs.opponent.weapon;
    if (foe.weapon) note(foe.weapon->instance_id);
    for (const MinionView& v : obs.opponent.board) {
        foe.board.push_back(v.minion);
        note(v.minion.instance_id);
    }

    int next = max_instance + 1;

    // Own graveyard: identities known, instance ids were not observed.
    for (const std::string& id : obs.own.graveyard) own.graveyard.push_back({next++, id});

    // Own deck: exact multiset, order re-randomized.
    for (const std::string& id : obs.own_deck_remaining) {
        if (!s.set->contains(id)) throw InconsistentObservation("unknown card in own deck: " + id);
        own.deck.push_back({next++, id});
    }
    fill.shuffle(own.deck);

    // Opponent hidden zones: uniform over the collectible cards of the
    // opponent's class pool plus Neutral. No deck-construction
    // constraints are inferred (naive sampler; agents may replace it).
    std::vector<const CardDefinition*> pool;
    std::vector<const CardDefinition*> secret_pool;
    for (const CardDefinition& c : s.set->cards()) {
        if (c.uncollectible) continue;
        if (c.hero_class != HeroClass::Neutral && c.hero_class != foe.hero_class) continue;
        pool.push_back(&c);
        if (c.kind == CardKind::Secret) secret_pool.push_back(&c);
    }
    if (pool.empty() && (obs.opponent.hand_count > 0 || obs.opponent.deck_count > 0))
        throw InconsistentObservation("no cards available for the opponent's class pool");

    for (int i = 0; i < obs.opponent.hand_count; ++i) {
        const CardDefinition* c = pool[fill.uniform(static_cast<std::uint32_t>(pool.size()))];
        foe.hand.push_back({next++, c->id});
    }
    for (int i = 0; i < obs.opponent.deck_count; ++i) {
        const CardDefinition* c = pool[fill.uniform(static_cast<std::uint32_t>(pool.size()))];
        foe.deck.push_back({next++, c->id});
    }

    // Secrets are sampled without replacement: the engine forbids two
    // copies of the same secret in play.
    if (obs.opponent.secret_count > static_cast<int>(secret_pool.size()))
        throw InconsistentObservation("more opponent secrets than distinct secret cards");
    std::vector<const CardDefinition*> secret_draw = secret_pool;
    fill.shuffle(secret_draw);
    for (int i = 0; i < obs.opponent.secret_count; ++i) {
        const CardDefinition* c = secret_draw[i];
        SecretInstance sec;
        sec.instance_id = next++;
        sec.card_id = c->id;
        sec.condition = *c->effects.front().condition;
        foe.secrets.push_back(sec);
    }

    s.next_instance = next;
    s.rng = Rng(derive_seed(rng_seed, {0x6a11ce5du}));
    return s;
}

}  // namespace ccg
