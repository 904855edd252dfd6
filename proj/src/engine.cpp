#include "ccg/engine.hpp"

#include <algorithm>

#include "ccg/errors.hpp"

namespace ccg {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Strings and JSON encodings
// ---------------------------------------------------------------------------

const char* to_string(Seat s) { return s == Seat::First ? "first" : "second"; }

std::optional<Seat> seat_from_string(const std::string& s) {
    if (s == "first") return Seat::First;
    if (s == "second") return Seat::Second;
    return std::nullopt;
}

const char* to_string(ActionType t) {
    switch (t) {
        case ActionType::EndTurn: return "end_turn";
        case ActionType::PlayCard: return "play_card";
        case ActionType::Attack: return "attack";
        case ActionType::HeroPower: return "hero_power";
        case ActionType::HeroAttack: return "hero_attack";
    }
    return "?";
}

const char* to_string(GameResult::Reason r) {
    switch (r) {
        case GameResult::Reason::HeroDead: return "HeroDead";
        case GameResult::Reason::TurnLimit: return "TurnLimit";
        case GameResult::Reason::Forfeit: return "Forfeit";
    }
    return "?";
}

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::TurnStarted: return "TurnStarted";
        case EventKind::CardDrawn: return "CardDrawn";
        case EventKind::FatigueDamage: return "FatigueDamage";
        case EventKind::CardPlayed: return "CardPlayed";
        case EventKind::MinionSummoned: return "MinionSummoned";
        case EventKind::AttackResolved: return "AttackResolved";
        case EventKind::DamageDealt: return "DamageDealt";
        case EventKind::Healed: return "Healed";
        case EventKind::MinionDied: return "MinionDied";
        case EventKind::SecretRevealed: return "SecretRevealed";
        case EventKind::WeaponBroken: return "WeaponBroken";
        case EventKind::TurnEnded: return "TurnEnded";
        case EventKind::GameEnded: return "GameEnded";
    }
    return "?";
}

namespace {

ordered_json ref_to_json(const EntityRef& r) {
    ordered_json j;
    if (r.is_hero()) {
        j["kind"] = "hero";
        j["seat"] = to_string(r.seat);
    } else {
        j["kind"] = "minion";
        j["instance"] = r.instance;
    }
    return j;
}

EntityRef ref_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParseError("entity ref: missing 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "hero") {
        if (!j.contains("seat") || !j["seat"].is_string())
            throw ParseError("entity ref: hero needs 'seat'");
        auto seat = seat_from_string(j["seat"].get<std::string>());
        if (!seat) throw ParseError("entity ref: bad seat");
        return EntityRef::hero(*seat);
    }
    if (kind == "minion") {
        if (!j.contains("instance") || !j["instance"].is_number_integer())
            throw ParseError("entity ref: minion needs 'instance'");
        return EntityRef::minion(j["instance"].get<int>());
    }
    throw ParseError("entity ref: unknown kind '" + kind + "'");
}

}  // namespace

ordered_json action_to_json(const Action& a) {
    ordered_json j;
    j["type"] = to_string(a.type);
    switch (a.type) {
        case ActionType::EndTurn:
            break;
        case ActionType::PlayCard:
            j["hand"] = a.hand_index;
            if (a.target) j["target"] = ref_to_json(*a.target);
            break;
        case ActionType::Attack:
            j["attacker"] = a.attacker;
            j["target"] = ref_to_json(*a.target);
            break;
        case ActionType::HeroPower:
            if (a.target) j["target"] = ref_to_json(*a.target);
            break;
        case ActionType::HeroAttack:
            j["target"] = ref_to_json(*a.target);
            break;
    }
    return j;
}

Action action_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ParseError("action: missing 'type'");
    const std::string type = j["type"].get<std::string>();
    Action a;
    auto target = [&j]() -> std::optional<EntityRef> {
        if (!j.contains("target")) return std::nullopt;
        return ref_from_json(j["target"]);
    };
    if (type == "end_turn") {
        a.type = ActionType::EndTurn;
    } else if (type == "play_card") {
        a.type = ActionType::PlayCard;
        if (!j.contains("hand") || !j["hand"].is_number_integer())
            throw ParseError("action: play_card needs 'hand'");
        a.hand_index = j["hand"].get<int>();
        a.target = target();
    } else if (type == "attack") {
        a.type = ActionType::Attack;
        if (!j.contains("attacker") || !j["attacker"].is_number_integer())
            throw ParseError("action: attack needs 'attacker'");
        a.attacker = j["attacker"].get<int>();
        a.target = target();
        if (!a.target) throw ParseError("action: attack needs 'target'");
    } else if (type == "hero_power") {
        a.type = ActionType::HeroPower;
        a.target = target();
    } else if (type == "hero_attack") {
        a.type = ActionType::HeroAttack;
        a.target = target();
        if (!a.target) throw ParseError("action: hero_attack needs 'target'");
    } else {
        throw ParseError("action: unknown type '" + type + "'");
    }
    return a;
}

std::string event_to_line(const GameEvent& e) {
    ordered_json j;
    j["ordinal"] = e.ordinal;
    j["kind"] = to_string(e.kind);
    j["payload"] = e.payload;
    return j.dump();
}

std::string serialize_event_log(const std::vector<GameEvent>& log) {
    std::string out;
    for (const GameEvent& e : log) {
        out += event_to_line(e);
        out += '\n';
    }
    return out;
}

ordered_json match_config_to_json(const MatchConfig& c) {
    ordered_json j;
    j["turnLimit"] = c.turn_limit;
    j["budgetMs"] = c.time_budget_ms;
    j["handLimit"] = c.hand_limit;
    j["boardLimit"] = c.board_limit;
    j["startingHandFirst"] = c.starting_hand_first;
    j["startingHandSecond"] = c.starting_hand_second;
    return j;
}

MatchConfig match_config_from_json(const ordered_json& j) {
    MatchConfig c;
    if (!j.is_object()) throw ParseError("match config must be an object");
    c.turn_limit = j.value("turnLimit", c.turn_limit);
    c.time_budget_ms = j.value("budgetMs", c.time_budget_ms);
    c.hand_limit = j.value("handLimit", c.hand_limit);
    c.board_limit = j.value("boardLimit", c.board_limit);
    c.starting_hand_first = j.value("startingHandFirst", c.starting_hand_first);
    c.starting_hand_second = j.value("startingHandSecond", c.starting_hand_second);
    if (c.turn_limit < 1 || c.time_budget_ms < 1 || c.hand_limit < 1 || c.board_limit < 1 ||
        c.starting_hand_first < 0 || c.starting_hand_second < 0)
        throw ParseError("match config values out of range");
    return c;
}

// ---------------------------------------------------------------------------
// Hero powers
// ---------------------------------------------------------------------------

HeroPowerKind hero_power_for(HeroClass c) {
    switch (c) {
        case HeroClass::Mage:
        case HeroClass::Hunter:
        case HeroClass::Rogue:
            return HeroPowerKind::DealDamage;
        case HeroClass::Priest:
        case HeroClass::Druid:
        case HeroClass::Shaman:
            return HeroPowerKind::Heal;
        case HeroClass::Paladin:
        case HeroClass::Warrior:
        case HeroClass::Warlock:
        case HeroClass::Neutral:
            return HeroPowerKind::SummonRecruit;
    }
    return HeroPowerKind::SummonRecruit;
}

// ---------------------------------------------------------------------------
// Stat views and lookups
// ---------------------------------------------------------------------------

namespace {

int aura_bonus(const GameState& state, Seat owner, const MinionInstance& m, EffectAction which) {
    int bonus = 0;
    for (const MinionInstance& source : state.player(owner).board) {
        if (!source.has_aura) continue;
        const CardDefinition& def = state.definition(source.card_id);
        for (const EffectScript& fx : def.effects) {
            if (fx.trigger != EffectTrigger::Aura || fx.action != which) continue;
            if (fx.target == EffectTarget::AllFriendlyMinions ||
                (fx.target == EffectTarget::FriendlyMinionsOfTribe && m.tribe == fx.tribe_arg)) {
                bonus += fx.amount;
            }
        }
    }
    return bonus;
}

}  // namespace

int effective_attack(const GameState& state, Seat owner, const MinionInstance& m) {
    return m.base_attack + aura_bonus(state, owner, m, EffectAction::BuffAttack);
}

int effective_max_health(const GameState& state, Seat owner, const MinionInstance& m) {
    return m.max_health + aura_bonus(state, owner, m, EffectAction::BuffHealth);
}

int effective_health(const GameState& state, Seat owner, const MinionInstance& m) {
    return m.current_health + aura_bonus(state, owner, m, EffectAction::BuffHealth);
}

const MinionInstance* find_minion(const GameState& state, int instance_id, Seat* owner) {
    for (Seat s : {Seat::First, Seat::Second}) {
        for (const MinionInstance& m : state.player(s).board) {
            if (m.instance_id == instance_id) {
                if (owner) *owner = s;
                return &m;
            }
        }
    }
    return nullptr;
}

namespace {

MinionInstance* find_minion_mut(GameState& state, int instance_id, Seat* owner = nullptr) {
    return const_cast<MinionInstance*>(find_minion(state, instance_id, owner));
}

// ---------------------------------------------------------------------------
// Event emission
// ---------------------------------------------------------------------------

void emit(GameState& s, EventKind kind, ordered_json payload) {
    if (!s.logging) return;
    GameEvent e;
    e.ordinal = static_cast<int>(s.events.size());
    e.kind = kind;
    e.payload = std::move(payload);
    s.events.push_back(std::move(e));
}

// ---------------------------------------------------------------------------
// Primitive state changes
// ---------------------------------------------------------------------------

void deal_damage(GameState& s, const EntityRef& target, int amount) {
    if (amount <= 0) return;
    int remaining = 0;
    if (target.is_hero()) {
        PlayerState& p = s.player(target.seat);
        p.hero_health -= amount;
        remaining = p.hero_health;
    } else {
        Seat owner;
        MinionInstance* m = find_minion_mut(s, target.instance, &owner);
        if (!m) return;  // stale target, nothing to hit
        m->current_health -= amount;
        remaining = effective_health(s, owner, *m);
    }
    if (s.logging) {
        ordered_json payload;
        payload["target"] = ref_to_json(target);
        payload["amount"] = amount;
        payload["remaining"] = remaining;
        emit(s, EventKind::DamageDealt, std::move(payload));
    }
}

void heal_entity(GameState& s, const EntityRef& target, int amount) {
    if (amount <= 0) return;
    int healed = 0;
    int resulting = 0;
    if (target.is_hero()) {
        PlayerState& p = s.player(target.seat);
        const int before = p.hero_health;
        p.hero_health = std::min(kHeroStartingHealth, p.hero_health + amount);
        healed = p.hero_health - before;
        resulting = p.hero_health;
    } else {
        Seat owner;
        MinionInstance* m = find_minion_mut(s, target.instance, &owner);
        if (!m) return;
        const int before = m->current_health;
        m->current_health = std::min(m->max_health, m->current_health + amount);
        healed = m->current_health - before;
        resulting = effective_health(s, owner, *m);
    }
    if (s.logging) {
        ordered_json payload;
        payload["target"] = ref_to_json(target);
        payload["amount"] = healed;
        payload["resulting"] = resulting;
        emit(s, EventKind::Healed, std::move(payload));
    }
}

void break_weapon(GameState& s, Seat seat) {
    PlayerState& p = s.player(seat);
    if (!p.weapon) return;
    if (s.logging) {
        ordered_json payload;
        payload["seat"] = to_string(seat);
        payload["card"] = p.weapon->card_id;
        payload["instance"] = p.weapon->instance_id;
        emit(s, EventKind::WeaponBroken, std::move(payload));
    }
    p.graveyard.push_back({p.weapon->instance_id, p.weapon->card_id});
    p.weapon.reset();
}

bool definition_has_aura(const CardDefinition& def) {
    for (const EffectScript& fx : def.effects)
        if (fx.trigger == EffectTrigger::Aura) return true;
    return false;
}

void summon_token(GameState& s, Seat seat, const std::string& token_id) {
    PlayerState& p = s.player(seat);
    if (static_cast<int>(p.board.size()) >= s.config.board_limit) return;  // no room, no token
    const CardDefinition& def = s.definition(token_id);
    MinionInstance m;
    m.instance_id = s.next_instance++;
    m.card_id = def.id;
    m.base_attack = def.attack;
    m.base_health = def.health;
    m.max_health = def.health;
    m.current_health = def.health;
    m.tribe = def.tribe;
    m.taunt = def.taunt;
    m.has_aura = definition_has_aura(def);
    m.exhausted = true;
    p.board.push_back(m);
    p.tokens_summoned += 1;
    if (s.logging) {
        ordered_json payload;
        payload["seat"] = to_string(seat);
        payload["card"] = def.id;
        payload["instance"] = m.instance_id;
        payload["attack"] = m.base_attack;
        payload["health"] = m.current_health;
        payload["position"] = static_cast<int>(p.board.size()) - 1;
        payload["token"] = true;
        emit(s, EventKind::MinionSummoned, std::move(payload));
    }
}

// ---------------------------------------------------------------------------
// Effect resolution
// ---------------------------------------------------------------------------

struct EffectContext {
    Seat controller = Seat::First;
    std::optional<EntityRef> chosen;
    std::optional<EntityRef> triggering;
    int source_instance = -1;  // board minion the effect belongs to, if any
};

void death_sweep(GameState& s);
void resolve_effect(GameState& s, const EffectScript& fx, const EffectContext& ctx);

Seat owner_of(const GameState& s, const EntityRef& ref) {
    if (ref.is_hero()) return ref.seat;
    Seat owner = Seat::First;
    find_minion(s, ref.instance, &owner);
    return owner;
}

std::vector<EntityRef> effect_targets(GameState& s, const EffectScript& fx,
                                      const EffectContext& ctx) {
    const Seat own = ctx.controller;
    const Seat enemy = other(own);
    std::vector<EntityRef> out;

    auto push_board = [&out](const GameState& st, Seat seat) {
        for (const MinionInstance& m : st.player(seat).board)
            out.push_back(EntityRef::minion(m.instance_id));
    };

    switch (fx.target) {
        case EffectTarget::ChosenTarget:
            if (ctx.chosen) {
                // Skip silently when the chosen entity died earlier in
                // the same resolution chain.
                if (ctx.chosen->is_hero() || find_minion(s, ctx.chosen->instance))
                    out.push_back(*ctx.chosen);
            }
            break;
        case EffectTarget::Self:
            if (ctx.source_instance >= 0 && find_minion(s, ctx.source_instance))
                out.push_back(EntityRef::minion(ctx.source_instance));
            else
                out.push_back(EntityRef::hero(own));
            break;
        case EffectTarget::OwnHero:
            out.push_back(EntityRef::hero(own));
            break;
        case EffectTarget::EnemyHero:
            out.push_back(EntityRef::hero(enemy));
            break;
        case EffectTarget::AllEnemyMinions:
            push_board(s, enemy);
            break;
        case EffectTarget::AllFriendlyMinions:
            push_board(s, own);
            break;
        case EffectTarget::RandomEnemyMinion: {
            const auto& board = s.player(enemy).board;
            if (!board.empty()) {
                const auto pick = s.rng.uniform(static_cast<std::uint32_t>(board.size()));
                out.push_back(EntityRef::minion(board[pick].instance_id));
            }
            break;
        }
        case EffectTarget::FriendlyMinionsOfTribe:
            for (const MinionInstance& m : s.player(own).board)
                if (m.tribe == fx.tribe_arg) out.push_back(EntityRef::minion(m.instance_id));
            break;
        case EffectTarget::TriggeringEntity:
            if (ctx.triggering &&
                (ctx.triggering->is_hero() || find_minion(s, ctx.triggering->instance)))
                out.push_back(*ctx.triggering);
            break;
    }
    return out;
}

// A value low enough that no aura can keep a destroyed minion alive.
constexpr int kDestroyedHealth = -1000000;

void apply_effect_to(GameState& s, const EffectScript& fx, const EntityRef& target) {
    switch (fx.action) {
        case EffectAction::Damage:
            deal_damage(s, target, fx.amount);
            break;
        case EffectAction::Heal:
            heal_entity(s, target, fx.amount);
            break;
        case EffectAction::BuffAttack:
            if (MinionInstance* m = find_minion_mut(s, target.instance); target.is_minion() && m)
                m->base_attack += fx.amount;
            break;
        case EffectAction::BuffHealth:
            if (MinionInstance* m = find_minion_mut(s, target.instance); target.is_minion() && m) {
                m->max_health += fx.amount;
                m->current_health += fx.amount;
            }
            break;
        case EffectAction::DrawCards:
            for (int i = 0; i < fx.amount; ++i) draw_card(s, owner_of(s, target));
            break;
        case EffectAction::SummonToken:
            summon_token(s, owner_of(s, target), fx.token_id);
            break;
        case EffectAction::DestroyMinion:
            if (MinionInstance* m = find_minion_mut(s, target.instance); target.is_minion() && m)
                m->current_health = kDestroyedHealth;
            break;
        case EffectAction::DestroyWeapon:
            if (target.is_hero()) break_weapon(s, target.seat);
            break;
        case EffectAction::GainMana: {
            PlayerState& p = s.player(owner_of(s, target));
            p.mana_max = std::min(kManaCap, p.mana_max + fx.amount);
            p.mana_current = std::min(p.mana_current + fx.amount, p.mana_max);
            break;
        }
    }
}

void resolve_effect(GameState& s, const EffectScript& fx, const EffectContext& ctx) {
    // Snapshot the target list, then apply to each; deaths are swept
    // once per effect so area effects land simultaneously.
    const std::vector<EntityRef> targets = effect_targets(s, fx, ctx);
    for (const EntityRef& t : targets) apply_effect_to(s, fx, t);
    death_sweep(s);
}

struct PendingDeathrattle {
    Seat controller;
    std::string card_id;
    int instance_id;
};

// Removes dead minions (effective health <= 0) to their graveyards and
// runs deathrattles, repeating until quiescent. Deaths are processed
// active player first, in board order.
void death_sweep(GameState& s) {
    while (true) {
        std::vector<PendingDeathrattle> rattles;
        bool any_death = false;
        for (Seat seat : {s.active_seat, other(s.active_seat)}) {
            PlayerState& p = s.player(seat);
            // Mark first: aura health must be read against the intact board.
            std::vector<bool> dead(p.board.size(), false);
            for (std::size_t i = 0; i < p.board.size(); ++i)
                dead[i] = effective_health(s, seat, p.board[i]) <= 0;

            std::vector<MinionInstance> alive;
            alive.reserve(p.board.size());
            for (std::size_t i = 0; i < p.board.size(); ++i) {
                MinionInstance& m = p.board[i];
                if (!dead[i]) {
                    alive.push_back(std::move(m));
                    continue;
                }
                any_death = true;
                if (s.logging) {
                    ordered_json payload;
                    payload["seat"] = to_string(seat);
                    payload["card"] = m.card_id;
                    payload["instance"] = m.instance_id;
                    emit(s, EventKind::MinionDied, std::move(payload));
                }
                p.graveyard.push_back({m.instance_id, m.card_id});
                rattles.push_back({seat, m.card_id, m.instance_id});
            }
            p.board = std::move(alive);
        }
        if (!any_death) return;
        for (const PendingDeathrattle& r : rattles) {
            const CardDefinition& def = s.definition(r.card_id);
            for (const EffectScript& fx : def.effects) {
                if (fx.trigger != EffectTrigger::Deathrattle) continue;
                EffectContext ctx;
                ctx.controller = r.controller;
                ctx.source_instance = r.instance_id;  // already off the board
                const std::vector<EntityRef> targets = effect_targets(s, fx, ctx);
                for (const EntityRef& t : targets) apply_effect_to(s, fx, t);
            }
        }
        // Loop: rattle effects may have created new deaths.
    }
}

// Fires every secret of `seat` matching `cond`, in play order. Each
// fires once, is revealed, and moves to the graveyard.
void fire_secrets(GameState& s, Seat seat, SecretCondition cond,
                  const std::optional<EntityRef>& triggering) {
    std::vector<SecretInstance> matched;
    {
        PlayerState& p = s.player(seat);
        std::vector<SecretInstance> keep;
        keep.reserve(p.secrets.size());
        for (SecretInstance& sec : p.secrets) {
            if (sec.condition == cond)
                matched.push_back(sec);
            else
                keep.push_back(sec);
        }
        p.secrets = std::move(keep);
    }
    for (const SecretInstance& sec : matched) {
        if (s.logging) {
            ordered_json payload;
            payload["seat"] = to_string(seat);
            payload["card"] = sec.card_id;
            payload["instance"] = sec.instance_id;
            payload["condition"] = to_string(sec.condition);
            emit(s, EventKind::SecretRevealed, std::move(payload));
        }
        s.player(seat).graveyard.push_back({sec.instance_id, sec.card_id});

        const CardDefinition& def = s.definition(sec.card_id);
        for (const EffectScript& fx : def.effects) {
            if (fx.trigger != EffectTrigger::SecretTrigger) continue;
            EffectContext ctx;
            ctx.controller = seat;
            ctx.triggering = triggering;
            resolve_effect(s, fx, ctx);
        }
    }
}

bool any_hero_dead(const GameState& s) {
    return s.players[0].hero_health <= 0 || s.players[1].hero_health <= 0;
}

// Sets the result exactly once, at the end of an action.
void finalize_action(GameState& s) {
    if (s.result) return;
    const bool first_dead = s.players[0].hero_health <= 0;
    const bool second_dead = s.players[1].hero_health <= 0;
    if (!first_dead && !second_dead) return;
    GameResult r;
    r.reason = GameResult::Reason::HeroDead;
    r.final_turn = s.turn_number;
    if (!(first_dead && second_dead)) r.winner = first_dead ? Seat::Second : Seat::First;
    s.result = r;
    if (s.logging) {
        ordered_json payload;
        payload["outcome"] = r.winner ? "win" : "draw";
        if (r.winner) payload["winner"] = to_string(*r.winner);
        payload["reason"] = to_string(r.reason);
        payload["finalTurn"] = r.final_turn;
        emit(s, EventKind::GameEnded, std::move(payload));
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Turn structure
// ---------------------------------------------------------------------------

void draw_card(GameState& state, Seat seat) {
    PlayerState& p = state.player(seat);
    if (p.deck.empty()) {
        p.fatigue_counter += 1;
        p.hero_health -= p.fatigue_counter;
        if (state.logging) {
            ordered_json payload;
            payload["seat"] = to_string(seat);
            payload["amount"] = p.fatigue_counter;
            payload["heroHealth"] = p.hero_health;
            emit(state, EventKind::FatigueDamage, std::move(payload));
        }
        return;
    }
    CardInstance card = p.deck.back();
    p.deck.pop_back();
    const bool burned = static_cast<int>(p.hand.size()) >= state.config.hand_limit;
    if (burned) {
        p.graveyard.push_back(card);
    } else {
        p.hand.push_back(card);
    }
    if (state.logging) {
        ordered_json payload;
        payload["seat"] = to_string(seat);
        payload["card"] = card.card_id;
        payload["instance"] = card.instance_id;
        payload["burned"] = burned;
        emit(state, EventKind::CardDrawn, std::move(payload));
    }
}

void begin_turn(GameState& state) {
    state.turn_number += 1;
    PlayerState& p = state.player(state.active_seat);
    p.mana_max = std::min(kManaCap, p.mana_max + 1);
    p.mana_current = p.mana_max;
    p.hero_power_used = false;
    p.hero_attacked = false;
    for (MinionInstance& m : p.board) {
        m.exhausted = false;
        m.attacks_this_turn = 0;
    }
    if (state.logging) {
        ordered_json payload;
        payload["turn"] = state.turn_number;
        payload["seat"] = to_string(state.active_seat);
        payload["manaMax"] = p.mana_max;
        emit(state, EventKind::TurnStarted, std::move(payload));
    }
    draw_card(state, state.active_seat);
}

// ---------------------------------------------------------------------------
// new_game
// ---------------------------------------------------------------------------

GameState new_game(const DeckSpec& deck_first, const DeckSpec& deck_second,
                   std::shared_ptr<const CardSet> set, const MatchConfig& config,
                   std::uint64_t seed) {
    for (const DeckSpec* deck : {&deck_first, &deck_second}) {
        const auto report = validate_deck(*deck, *set);
        if (!report.empty()) {
            std::string msg = "deck '" + deck->name + "' is invalid:";
            for (const DeckViolation& v : report) msg += "\n  - " + v.describe();
            throw InvalidDeck(msg);
        }
    }

    GameState s;
    s.set = std::move(set);
    s.config = config;
    s.rng = Rng(seed);
    s.players[0].hero_class = deck_first.hero_class;
    s.players[1].hero_class = deck_second.hero_class;

    const DeckSpec* specs[2] = {&deck_first, &deck_second};
    for (int i = 0; i < 2; ++i) {
        for (const std::string& id : specs[i]->card_ids) {
            s.players[i].deck.push_back({s.next_instance++, id});
        }
    }
    s.rng.shuffle(s.players[0].deck);
    s.rng.shuffle(s.players[1].deck);

    for (int i = 0; i < config.starting_hand_first; ++i) draw_card(s, Seat::First);
    for (int i = 0; i < config.starting_hand_second; ++i) draw_card(s, Seat::Second);

    s.active_seat = Seat::First;
    begin_turn(s);
    finalize_action(s);  // a fatigue opener is possible only with degenerate configs
    return s;
}

// ---------------------------------------------------------------------------
// Legal actions
// ---------------------------------------------------------------------------

namespace {

// Canonical chosen-target candidates for an effect: friendly hero,
// friendly minions in board order, enemy hero, enemy minions in board
// order, filtered by what the action can apply to.
std::vector<EntityRef> chosen_candidates(const GameState& s, Seat active,
                                         const EffectScript& fx) {
    std::vector<EntityRef> out;
    const Seat enemy = other(active);
    auto heroes_and_minions = [&](bool heroes, bool own_minions, bool enemy_minions) {
        if (heroes) out.push_back(EntityRef::hero(active));
        if (own_minions)
            for (const MinionInstance& m : s.player(active).board)
                out.push_back(EntityRef::minion(m.instance_id));
        if (heroes) out.push_back(EntityRef::hero(enemy));
        if (enemy_minions)
            for (const MinionInstance& m : s.player(enemy).board)
                out.push_back(EntityRef::minion(m.instance_id));
    };
    switch (fx.action) {
        case EffectAction::Damage:
        case EffectAction::Heal:
            heroes_and_minions(true, true, true);
            break;
        case EffectAction::BuffAttack:
        case EffectAction::BuffHealth:
            heroes_and_minions(false, true, false);
            break;
        case EffectAction::DestroyMinion:
            heroes_and_minions(false, true, true);
            break;
        case EffectAction::DestroyWeapon:
            // Only heroes carrying a weapon are meaningful targets.
            if (s.player(active).weapon) out.push_back(EntityRef::hero(active));
            if (s.player(enemy).weapon) out.push_back(EntityRef::hero(enemy));
            break;
        default:
            break;  // DrawCards/GainMana/SummonToken never use ChosenTarget
    }
    return out;
}

const EffectScript* chosen_target_effect(const CardDefinition& def) {
    for (const EffectScript& fx : def.effects)
        if (fx.target == EffectTarget::ChosenTarget) return &fx;
    return nullptr;
}

// Attackable defenders: taunt minions only while any are present,
// otherwise every enemy minion (board order) then the enemy hero.
std::vector<EntityRef> attack_defenders(const GameState& s, Seat active) {
    const PlayerState& enemy = s.player(other(active));
    std::vector<EntityRef> out;
    bool has_taunt = false;
    for (const MinionInstance& m : enemy.board) has_taunt = has_taunt || m.taunt;
    for (const MinionInstance& m : enemy.board)
        if (!has_taunt || m.taunt) out.push_back(EntityRef::minion(m.instance_id));
    if (!has_taunt) out.push_back(EntityRef::hero(other(active)));
    return out;
}

}  // namespace

std::vector<Action> legal_actions(const GameState& state) {
    if (game_result(state)) throw GameAlreadyOver();

    const Seat active = state.active_seat;
    const PlayerState& p = state.player(active);
    std::vector<Action> out;
    out.push_back(Action::end_turn());

    // Card plays, by hand index.
    for (int i = 0; i < static_cast<int>(p.hand.size()); ++i) {
        const CardDefinition& def = state.definition(p.hand[i].card_id);
        if (def.mana_cost > p.mana_current) continue;
        switch (def.kind) {
            case CardKind::Minion: {
                if (static_cast<int>(p.board.size()) >= state.config.board_limit) break;
                const EffectScript* chooser = chosen_target_effect(def);
                std::vector<EntityRef> candidates;
                if (chooser) candidates = chosen_candidates(state, active, *chooser);
                if (candidates.empty()) {
                    out.push_back(Action::play_card(i));
                } else {
                    for (const EntityRef& t : candidates) out.push_back(Action::play_card(i, t));
                }
                break;
            }
            case CardKind::Spell: {
                const EffectScript* chooser = chosen_target_effect(def);
                if (!chooser) {
                    out.push_back(Action::play_card(i));
                } else {
                    for (const EntityRef& t : chosen_candidates(state, active, *chooser))
                        out.push_back(Action::play_card(i, t));
                }
                break;
            }
            case CardKind::Secret: {
                bool duplicate = false;
                for (const SecretInstance& sec : p.secrets)
                    duplicate = duplicate || sec.card_id == def.id;
                if (!duplicate) out.push_back(Action::play_card(i));
                break;
            }
            case CardKind::Weapon:
                out.push_back(Action::play_card(i));  // replacing is allowed
                break;
        }
    }

    // Minion attacks, by board order.
    const std::vector<EntityRef> defenders = attack_defenders(state, active);
    for (const MinionInstance& m : p.board) {
        if (m.exhausted || m.attacks_this_turn >= 1) continue;
        if (effective_attack(state, active, m) <= 0) continue;
        for (const EntityRef& d : defenders) out.push_back(Action::attack(m.instance_id, d));
    }

    // Hero power.
    if (!p.hero_power_used && p.mana_current >= kHeroPowerCost) {
        switch (hero_power_for(p.hero_class)) {
            case HeroPowerKind::DealDamage: {
                EffectScript fx;
                fx.action = EffectAction::Damage;
                for (const EntityRef& t : chosen_candidates(state, active, fx))
                    out.push_back(Action::hero_power(t));
                break;
            }
            case HeroPowerKind::Heal: {
                EffectScript fx;
                fx.action = EffectAction::Heal;
                for (const EntityRef& t : chosen_candidates(state, active, fx))
                    out.push_back(Action::hero_power(t));
                break;
            }
            case HeroPowerKind::SummonRecruit:
                if (static_cast<int>(p.board.size()) < state.config.board_limit &&
                    state.set->contains(kRecruitTokenId)) {
                    out.push_back(Action::hero_power());
                }
                break;
        }
    }

    // Hero attack with an equipped weapon.
    if (p.weapon && !p.hero_attacked) {
        for (const EntityRef& d : defenders) out.push_back(Action::hero_attack(d));
    }

    return out;
}

// ---------------------------------------------------------------------------
// Attack resolution
// ---------------------------------------------------------------------------

void resolve_attack(GameState& state, const EntityRef& attacker, const EntityRef& defender) {
    const Seat active = state.active_seat;

    if (state.logging) {
        ordered_json payload;
        payload["attacker"] = ref_to_json(attacker);
        payload["defender"] = ref_to_json(defender);
        emit(state, EventKind::AttackResolved, std::move(payload));
    }

    if (attacker.is_minion()) {
        {
            MinionInstance* m = find_minion_mut(state, attacker.instance);
            if (!m) throw IllegalAction("attacker does not exist");
            m->attacks_this_turn += 1;  // the attack is spent even if a secret stops it
        }

        // Defender-side secrets see the attack before damage lands.
        fire_secrets(state, other(active), SecretCondition::EnemyMinionAttacks, attacker);

        if (any_hero_dead(state)) return;  // a secret ended the game

        Seat attacker_owner = Seat::First;
        const MinionInstance* atk = find_minion(state, attacker.instance, &attacker_owner);
        if (!atk) return;  // the secret killed the attacker; the attack fizzles
        if (defender.is_minion() && !find_minion(state, defender.instance)) return;

        const int attack_value = effective_attack(state, attacker_owner, *atk);
        if (defender.is_minion()) {
            Seat defender_owner = Seat::First;
            const MinionInstance* def = find_minion(state, defender.instance, &defender_owner);
            const int counter = effective_attack(state, defender_owner, *def);
            deal_damage(state, defender, attack_value);
            deal_damage(state, attacker, counter);  // simultaneous exchange
        } else {
            deal_damage(state, defender, attack_value);
        }
        death_sweep(state);
        return;
    }

    // Hero attack: requires a weapon; heroes have no attack without one.
    PlayerState& p = state.player(attacker.seat);
    if (!p.weapon) throw IllegalAction("hero has no weapon equipped");
    p.hero_attacked = true;
    const int attack_value = p.weapon->attack;

    if (defender.is_minion()) {
        Seat defender_owner = Seat::First;
        const MinionInstance* def = find_minion(state, defender.instance, &defender_owner);
        if (!def) throw IllegalAction("defender does not exist");
        const int counter = effective_attack(state, defender_owner, *def);
        deal_damage(state, defender, attack_value);
        deal_damage(state, EntityRef::hero(attacker.seat), counter);
    } else {
        deal_damage(state, defender, attack_value);
    }

    p.weapon->durability -= 1;
    if (p.weapon->durability <= 0) break_weapon(state, attacker.seat);
    death_sweep(state);
}

// ---------------------------------------------------------------------------
// apply_action
// ---------------------------------------------------------------------------

namespace {

void handle_play_card(GameState& s, const Action& a) {
    const Seat active = s.active_seat;
    PlayerState& p = s.player(active);
    const CardInstance card = p.hand[a.hand_index];
    const CardDefinition& def = s.definition(card.card_id);

    p.mana_current -= def.mana_cost;
    p.hand.erase(p.hand.begin() + a.hand_index);

    if (s.logging) {
        ordered_json payload;
        payload["seat"] = to_string(active);
        payload["card"] = card.card_id;
        payload["instance"] = card.instance_id;
        payload["cost"] = def.mana_cost;
        emit(s, EventKind::CardPlayed, std::move(payload));
    }

    switch (def.kind) {
        case CardKind::Minion: {
            MinionInstance m;
            m.instance_id = card.instance_id;
            m.card_id = def.id;
            m.base_attack = def.attack;
            m.base_health = def.health;
            m.max_health = def.health;
            m.current_health = def.health;
            m.tribe = def.tribe;
            m.taunt = def.taunt;
            m.has_aura = definition_has_aura(def);
            m.exhausted = true;
            p.board.push_back(m);
            if (s.logging) {
                ordered_json summoned;
                summoned["seat"] = to_string(active);
                summoned["card"] = def.id;
                summoned["instance"] = m.instance_id;
                summoned["attack"] = m.base_attack;
                summoned["health"] = m.current_health;
                summoned["position"] = static_cast<int>(p.board.size()) - 1;
                summoned["token"] = false;
                emit(s, EventKind::MinionSummoned, std::move(summoned));
            }

            const EntityRef self = EntityRef::minion(m.instance_id);
            for (const EffectScript& fx : def.effects) {
                if (fx.trigger != EffectTrigger::Battlecry) continue;
                EffectContext ctx;
                ctx.controller = active;
                ctx.chosen = a.target;
                ctx.source_instance = m.instance_id;
                resolve_effect(s, fx, ctx);
            }
            fire_secrets(s, other(active), SecretCondition::EnemyPlaysMinion, self);
            break;
        }
        case CardKind::Spell: {
            for (const EffectScript& fx : def.effects) {
                if (fx.trigger != EffectTrigger::OnCast) continue;
                EffectContext ctx;
                ctx.controller = active;
                ctx.chosen = a.target;
                resolve_effect(s, fx, ctx);
            }
            p.graveyard.push_back(card);
            fire_secrets(s, other(active), SecretCondition::EnemySpellCast,
                         EntityRef::hero(active));
            break;
        }
        case CardKind::Secret: {
            SecretInstance sec;
            sec.instance_id = card.instance_id;
            sec.card_id = def.id;
            sec.condition = *def.effects.front().condition;
            p.secrets.push_back(sec);
            // Playing a secret is still a spell cast.
            fire_secrets(s, other(active), SecretCondition::EnemySpellCast,
                         EntityRef::hero(active));
            break;
        }
        case CardKind::Weapon: {
            break_weapon(s, active);  // replacing sends the old weapon to the graveyard
            WeaponState w;
            w.instance_id = card.instance_id;
            w.card_id = def.id;
            w.attack = def.attack;
            w.durability = def.health;
            p.weapon = w;
            break;
        }
    }
}

void handle_hero_power(GameState& s, const Action& a) {
    PlayerState& p = s.player(s.active_seat);
    p.mana_current -= kHeroPowerCost;
    p.hero_power_used = true;
    switch (hero_power_for(p.hero_class)) {
        case HeroPowerKind::DealDamage:
            deal_damage(s, *a.target, kHeroPowerDamage);
            death_sweep(s);
            break;
        case HeroPowerKind::Heal:
            heal_entity(s, *a.target, kHeroPowerHeal);
            break;
        case HeroPowerKind::SummonRecruit:
            summon_token(s, s.active_seat, kRecruitTokenId);
            break;
    }
}

void handle_end_turn(GameState& s) {
    if (s.logging) {
        ordered_json payload;
        payload["turn"] = s.turn_number;
        payload["seat"] = to_string(s.active_seat);
        emit(s, EventKind::TurnEnded, std::move(payload));
    }

    if (s.turn_number >= s.config.turn_limit) {
        // The next turn never begins: the game is a draw at the limit.
        GameResult r;
        r.reason = GameResult::Reason::TurnLimit;
        r.final_turn = s.turn_number;
        s.result = r;
        if (s.logging) {
            ordered_json ended;
            ended["outcome"] = "draw";
            ended["reason"] = to_string(r.reason);
            ended["finalTurn"] = r.final_turn;
            emit(s, EventKind::GameEnded, std::move(ended));
        }
        return;
    }
    s.active_seat = other(s.active_seat);
    begin_turn(s);
}

}  // namespace

void apply_action_in_place(GameState& state, const Action& action) {
    const std::vector<Action> options = legal_actions(state);  // throws GameAlreadyOver
    if (std::find(options.begin(), options.end(), action) == options.end())
        throw IllegalAction("action is not legal in this state");
    apply_action_unchecked(state, action);
}

void apply_action_unchecked(GameState& state, const Action& action) {
    switch (action.type) {
        case ActionType::EndTurn:
            handle_end_turn(state);
            break;
        case ActionType::PlayCard:
            handle_play_card(state, action);
            break;
        case ActionType::Attack:
            resolve_attack(state, EntityRef::minion(action.attacker), *action.target);
            break;
        case ActionType::HeroPower:
            handle_hero_power(state, action);
            break;
        case ActionType::HeroAttack:
            resolve_attack(state, EntityRef::hero(state.active_seat), *action.target);
            break;
    }
    finalize_action(state);
}

GameState apply_action(const GameState& state, const Action& action) {
    GameState next = state;
    apply_action_in_place(next, action);
    return next;
}

std::optional<GameResult> game_result(const GameState& state) {
    if (state.result) return state.result;
    const bool first_dead = state.players[0].hero_health <= 0;
    const bool second_dead = state.players[1].hero_health <= 0;
    if (first_dead || second_dead) {
        GameResult r;
        r.reason = GameResult::Reason::HeroDead;
        r.final_turn = state.turn_number;
        if (!(first_dead && second_dead)) r.winner = first_dead ? Seat::Second : Seat::First;
        return r;
    }
    if (state.turn_number > state.config.turn_limit) {
        GameResult r;
        r.reason = GameResult::Reason::TurnLimit;
        r.final_turn = state.config.turn_limit;
        return r;
    }
    return std::nullopt;
}

}  // namespace ccg
