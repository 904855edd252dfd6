#include "ccg/cards.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ccg/errors.hpp"
#include "json.hpp"

namespace ccg {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Enum <-> string tables
// ---------------------------------------------------------------------------

namespace {

const std::pair<HeroClass, const char*> kClassNames[] = {
    {HeroClass::Druid, "Druid"},     {HeroClass::Hunter, "Hunter"},
    {HeroClass::Mage, "Mage"},       {HeroClass::Paladin, "Paladin"},
    {HeroClass::Priest, "Priest"},   {HeroClass::Rogue, "Rogue"},
    {HeroClass::Shaman, "Shaman"},   {HeroClass::Warlock, "Warlock"},
    {HeroClass::Warrior, "Warrior"}, {HeroClass::Neutral, "Neutral"},
};

const std::pair<CardKind, const char*> kKindNames[] = {
    {CardKind::Minion, "Minion"},
    {CardKind::Spell, "Spell"},
    {CardKind::Secret, "Secret"},
    {CardKind::Weapon, "Weapon"},
};

const std::pair<EffectTrigger, const char*> kTriggerNames[] = {
    {EffectTrigger::Battlecry, "Battlecry"},
    {EffectTrigger::Deathrattle, "Deathrattle"},
    {EffectTrigger::OnCast, "OnCast"},
    {EffectTrigger::Aura, "Aura"},
    {EffectTrigger::SecretTrigger, "SecretTrigger"},
};

const std::pair<SecretCondition, const char*> kConditionNames[] = {
    {SecretCondition::EnemyMinionAttacks, "EnemyMinionAttacks"},
    {SecretCondition::EnemyPlaysMinion, "EnemyPlaysMinion"},
    {SecretCondition::EnemySpellCast, "EnemySpellCast"},
};

const std::pair<EffectAction, const char*> kActionNames[] = {
    {EffectAction::Damage, "Damage"},
    {EffectAction::Heal, "Heal"},
    {EffectAction::BuffAttack, "BuffAttack"},
    {EffectAction::BuffHealth, "BuffHealth"},
    {EffectAction::DrawCards, "DrawCards"},
    {EffectAction::SummonToken, "SummonToken"},
    {EffectAction::DestroyMinion, "DestroyMinion"},
    {EffectAction::DestroyWeapon, "DestroyWeapon"},
    {EffectAction::GainMana, "GainMana"},
};

const std::pair<EffectTarget, const char*> kTargetNames[] = {
    {EffectTarget::ChosenTarget, "ChosenTarget"},
    {EffectTarget::Self, "Self"},
    {EffectTarget::OwnHero, "OwnHero"},
    {EffectTarget::EnemyHero, "EnemyHero"},
    {EffectTarget::AllEnemyMinions, "AllEnemyMinions"},
    {EffectTarget::AllFriendlyMinions, "AllFriendlyMinions"},
    {EffectTarget::RandomEnemyMinion, "RandomEnemyMinion"},
    {EffectTarget::FriendlyMinionsOfTribe, "FriendlyMinionsOfTribe"},
    {EffectTarget::TriggeringEntity, "TriggeringEntity"},
};

template <typename E, std::size_t N>
const char* name_of(const std::pair<E, const char*> (&table)[N], E value) {
    for (const auto& [e, s] : table) {
        if (e == value) return s;
    }
    return "?";
}

template <typename E, std::size_t N>
std::optional<E> value_of(const std::pair<E, const char*> (&table)[N], const std::string& s) {
    for (const auto& [e, n] : table) {
        if (s == n) return e;
    }
    return std::nullopt;
}

}  // namespace

bool is_playable_class(HeroClass c) { return c != HeroClass::Neutral; }

const char* to_string(HeroClass c) { return name_of(kClassNames, c); }
const char* to_string(CardKind k) { return name_of(kKindNames, k); }
const char* to_string(EffectTrigger t) { return name_of(kTriggerNames, t); }
const char* to_string(SecretCondition c) { return name_of(kConditionNames, c); }
const char* to_string(EffectAction a) { return name_of(kActionNames, a); }
const char* to_string(EffectTarget t) { return name_of(kTargetNames, t); }

std::optional<HeroClass> hero_class_from_string(const std::string& s) { return value_of(kClassNames, s); }
std::optional<CardKind> card_kind_from_string(const std::string& s) { return value_of(kKindNames, s); }
std::optional<EffectTrigger> effect_trigger_from_string(const std::string& s) { return value_of(kTriggerNames, s); }
std::optional<SecretCondition> secret_condition_from_string(const std::string& s) { return value_of(kConditionNames, s); }
std::optional<EffectAction> effect_action_from_string(const std::string& s) { return value_of(kActionNames, s); }
std::optional<EffectTarget> effect_target_from_string(const std::string& s) { return value_of(kTargetNames, s); }

const char* to_string(DeckArchetype a) {
    switch (a) {
        case DeckArchetype::Aggro: return "Aggro";
        case DeckArchetype::MidRange: return "MidRange";
        case DeckArchetype::Control: return "Control";
    }
    return "?";
}

std::optional<DeckArchetype> deck_archetype_from_string(const std::string& s) {
    if (s == "Aggro") return DeckArchetype::Aggro;
    if (s == "MidRange") return DeckArchetype::MidRange;
    if (s == "Control") return DeckArchetype::Control;
    return std::nullopt;
}

bool action_takes_amount(EffectAction a) {
    switch (a) {
        case EffectAction::Damage:
        case EffectAction::Heal:
        case EffectAction::BuffAttack:
        case EffectAction::BuffHealth:
        case EffectAction::DrawCards:
        case EffectAction::GainMana:
            return true;
        case EffectAction::SummonToken:
        case EffectAction::DestroyMinion:
        case EffectAction::DestroyWeapon:
            return false;
    }
    return false;
}

// ---------------------------------------------------------------------------
// CardSet
// ---------------------------------------------------------------------------

CardSet::CardSet(std::string version, std::vector<CardDefinition> cards)
    : version_(std::move(version)), cards_(std::move(cards)) {
    index_.reserve(cards_.size());
    for (std::size_t i = 0; i < cards_.size(); ++i) {
        auto [it, inserted] = index_.emplace(cards_[i].id, i);
        if (!inserted) throw DuplicateId(cards_[i].id);
    }
}

const CardDefinition* CardSet::find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &cards_[it->second];
}

const CardDefinition& CardSet::at(const std::string& id) const {
    const CardDefinition* def = find(id);
    if (!def) throw UnknownCard(id);
    return *def;
}

bool CardSet::operator==(const CardSet& other) const {
    if (version_ != other.version_ || cards_.size() != other.cards_.size()) return false;
    auto sorted = [](std::vector<CardDefinition> v) {
        std::sort(v.begin(), v.end(),
                  [](const CardDefinition& a, const CardDefinition& b) { return a.id < b.id; });
        return v;
    };
    return sorted(cards_) == sorted(other.cards_);
}

// ---------------------------------------------------------------------------
// Deck validation
// ---------------------------------------------------------------------------

std::string DeckViolation::describe() const {
    switch (kind) {
        case Kind::DeckSizeInvalid:
            return "deck has " + std::to_string(value) + " cards, expected " +
                   std::to_string(kDeckSize);
        case Kind::UnknownCard:
            return "unknown card id '" + card_id + "'";
        case Kind::ClassMismatch:
            return "card '" + card_id + "' does not belong to the deck's class or Neutral";
        case Kind::CopyLimitExceeded:
            return "card '" + card_id + "' appears " + std::to_string(value) +
                   " times, limit is " + std::to_string(kMaxCopiesPerCard);
        case Kind::UncollectibleCard:
            return "card '" + card_id + "' is uncollectible and cannot be put in a deck";
        case Kind::UnplayableClass:
            return "deck class must be one of the nine playable classes";
    }
    return "?";
}

std::vector<DeckViolation> validate_deck(const DeckSpec& deck, const CardSet& set) {
    std::vector<DeckViolation> report;
    using K = DeckViolation::Kind;

    if (!is_playable_class(deck.hero_class)) {
        report.push_back({K::UnplayableClass, "", 0});
    }
    if (static_cast<int>(deck.card_ids.size()) != kDeckSize) {
        report.push_back({K::DeckSizeInvalid, "", static_cast<int>(deck.card_ids.size())});
    }

    std::map<std::string, int> copies;
    std::set<std::string> reported;  // one entry per offending id
    for (const std::string& id : deck.card_ids) ++copies[id];

    for (const std::string& id : deck.card_ids) {
        if (reported.count(id)) continue;
        reported.insert(id);
        const CardDefinition* def = set.find(id);
        if (!def) {
            report.push_back({K::UnknownCard, id, 0});
            continue;
        }
        if (def->uncollectible) {
            report.push_back({K::UncollectibleCard, id, 0});
        }
        if (def->hero_class != HeroClass::Neutral && def->hero_class != deck.hero_class) {
            report.push_back({K::ClassMismatch, id, 0});
        }
        if (copies[id] > kMaxCopiesPerCard) {
            report.push_back({K::CopyLimitExceeded, id, copies[id]});
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Card file parsing
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
    throw SchemaError(where + ": " + what);
}

void require_fields(const ordered_json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) schema_fail(where, "unknown field '" + it.key() + "'");
    }
}

int require_int(const ordered_json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) schema_fail(where, "missing field '" + key + "'");
    if (!obj[key].is_number_integer()) schema_fail(where, "field '" + key + "' must be an integer");
    return obj[key].get<int>();
}

std::string require_string(const ordered_json& obj, const std::string& where,
                           const std::string& key) {
    if (!obj.contains(key)) schema_fail(where, "missing field '" + key + "'");
    if (!obj[key].is_string()) schema_fail(where, "field '" + key + "' must be a string");
    return obj[key].get<std::string>();
}

EffectScript parse_effect(const ordered_json& e, const std::string& where) {
    if (!e.is_object()) schema_fail(where, "effect must be an object");
    require_fields(e, where, {"trigger", "condition", "action", "amount", "token", "target", "tribeArg"});

    EffectScript fx;
    const std::string trigger = require_string(e, where, "trigger");
    auto trig = effect_trigger_from_string(trigger);
    if (!trig) schema_fail(where, "unknown trigger '" + trigger + "'");
    fx.trigger = *trig;

    if (fx.trigger == EffectTrigger::SecretTrigger) {
        const std::string cond = require_string(e, where, "condition");
        auto c = secret_condition_from_string(cond);
        if (!c) schema_fail(where, "unknown secret condition '" + cond + "'");
        fx.condition = *c;
    } else if (e.contains("condition")) {
        schema_fail(where, "'condition' is only valid on SecretTrigger effects");
    }

    const std::string action = require_string(e, where, "action");
    auto act = effect_action_from_string(action);
    if (!act) schema_fail(where, "unknown action '" + action + "'");
    fx.action = *act;

    if (action_takes_amount(fx.action)) {
        fx.amount = require_int(e, where, "amount");
        if (fx.amount <= 0) schema_fail(where, "'amount' must be positive");
    } else if (e.contains("amount")) {
        schema_fail(where, "'amount' is not valid for action " + action);
    }

    if (fx.action == EffectAction::SummonToken) {
        fx.token_id = require_string(e, where, "token");
        if (fx.token_id.empty()) schema_fail(where, "'token' must be nonempty");
    } else if (e.contains("token")) {
        schema_fail(where, "'token' is only valid for SummonToken");
    }

    const std::string target = require_string(e, where, "target");
    auto tgt = effect_target_from_string(target);
    if (!tgt) schema_fail(where, "unknown target '" + target + "'");
    fx.target = *tgt;

    if (fx.target == EffectTarget::FriendlyMinionsOfTribe) {
        fx.tribe_arg = require_string(e, where, "tribeArg");
        if (fx.tribe_arg.empty()) schema_fail(where, "'tribeArg' must be nonempty");
    } else if (e.contains("tribeArg")) {
        schema_fail(where, "'tribeArg' is only valid for FriendlyMinionsOfTribe");
    }

    return fx;
}

// Structural rules that tie effects to the card kind.
void check_effects(const CardDefinition& card, const std::string& where) {
    int chosen_targets = 0;
    for (const EffectScript& fx : card.effects) {
        if (fx.target == EffectTarget::ChosenTarget) ++chosen_targets;

        switch (fx.trigger) {
            case EffectTrigger::Battlecry:
            case EffectTrigger::Deathrattle:
            case EffectTrigger::Aura:
                if (card.kind != CardKind::Minion)
                    schema_fail(where, std::string(to_string(fx.trigger)) + " requires kind Minion");
                break;
            case EffectTrigger::OnCast:
                if (card.kind != CardKind::Spell)
                    schema_fail(where, "OnCast requires kind Spell");
                break;
            case EffectTrigger::SecretTrigger:
                if (card.kind != CardKind::Secret)
                    schema_fail(where, "SecretTrigger requires kind Secret");
                if (fx.target == EffectTarget::ChosenTarget)
                    schema_fail(where, "secret effects cannot use ChosenTarget");
                break;
        }

        if (fx.trigger == EffectTrigger::Aura) {
            const bool target_ok = fx.target == EffectTarget::FriendlyMinionsOfTribe ||
                                   fx.target == EffectTarget::AllFriendlyMinions;
            const bool action_ok = fx.action == EffectAction::BuffAttack ||
                                   fx.action == EffectAction::BuffHealth;
            if (!target_ok)
                schema_fail(where, "Aura may only target FriendlyMinionsOfTribe or AllFriendlyMinions");
            if (!action_ok) schema_fail(where, "Aura may only use BuffAttack or BuffHealth");
        }

        if (fx.target == EffectTarget::ChosenTarget &&
            (fx.action == EffectAction::DrawCards || fx.action == EffectAction::GainMana ||
             fx.action == EffectAction::SummonToken)) {
            schema_fail(where, std::string(to_string(fx.action)) + " cannot use ChosenTarget");
        }
    }
    if (chosen_targets > 1) schema_fail(where, "at most one ChosenTarget effect per card");

    if (card.kind == CardKind::Secret) {
        if (card.effects.size() != 1 || card.effects[0].trigger != EffectTrigger::SecretTrigger)
            schema_fail(where, "a Secret must have exactly one SecretTrigger effect");
    } else {
        for (const EffectScript& fx : card.effects) {
            if (fx.trigger == EffectTrigger::SecretTrigger)
                schema_fail(where, "only Secrets may have SecretTrigger effects");
        }
    }
}

CardDefinition parse_card(const ordered_json& c, std::size_t index) {
    const std::string where0 = "cards[" + std::to_string(index) + "]";
    if (!c.is_object()) schema_fail(where0, "card must be an object");

    require_fields(c, where0, {"id", "name", "class", "kind", "cost", "attack", "health",
                               "durability", "tribe", "taunt", "uncollectible", "effects"});

    CardDefinition card;
    card.id = require_string(c, where0, "id");
    if (card.id.empty()) schema_fail(where0, "'id' must be nonempty");
    if (card.id == kDummyCardId) schema_fail(where0, "'dummy' is a reserved id");
    const std::string where = where0 + " ('" + card.id + "')";

    card.name = require_string(c, where, "name");
    if (card.name.empty()) schema_fail(where, "'name' must be nonempty");

    const std::string cls = require_string(c, where, "class");
    auto hc = hero_class_from_string(cls);
    if (!hc) schema_fail(where, "unknown class '" + cls + "'");
    card.hero_class = *hc;

    const std::string kind = require_string(c, where, "kind");
    auto k = card_kind_from_string(kind);
    if (!k) schema_fail(where, "unknown kind '" + kind + "'");
    card.kind = *k;

    card.mana_cost = require_int(c, where, "cost");
    if (card.mana_cost < 0) schema_fail(where, "'cost' must be >= 0");

    const bool is_minion = card.kind == CardKind::Minion;
    const bool is_weapon = card.kind == CardKind::Weapon;

    if (is_minion) {
        card.attack = require_int(c, where, "attack");
        card.health = require_int(c, where, "health");
        if (c.contains("durability")) schema_fail(where, "'durability' is not valid on a Minion");
    } else if (is_weapon) {
        card.attack = require_int(c, where, "attack");
        card.health = require_int(c, where, "durability");
        if (c.contains("health")) schema_fail(where, "'health' is not valid on a Weapon");
    } else {
        for (const char* f : {"attack", "health", "durability"}) {
            if (c.contains(f))
                schema_fail(where, "'" + std::string(f) + "' is not valid on a " + kind);
        }
    }
    if ((is_minion || is_weapon)) {
        if (card.attack < 0) schema_fail(where, "attack must be >= 0");
        if (card.health < 1)
            schema_fail(where, is_minion ? "health must be >= 1" : "durability must be >= 1");
    }

    if (c.contains("tribe")) {
        if (!is_minion) schema_fail(where, "'tribe' is only valid on a Minion");
        if (!c["tribe"].is_string()) schema_fail(where, "'tribe' must be a string");
        card.tribe = c["tribe"].get<std::string>();
        if (card.tribe.empty()) schema_fail(where, "'tribe' must be nonempty when present");
    }
    if (c.contains("taunt")) {
        if (!is_minion) schema_fail(where, "'taunt' is only valid on a Minion");
        if (!c["taunt"].is_boolean()) schema_fail(where, "'taunt' must be a boolean");
        card.taunt = c["taunt"].get<bool>();
    }
    if (c.contains("uncollectible")) {
        if (!c["uncollectible"].is_boolean()) schema_fail(where, "'uncollectible' must be a boolean");
        card.uncollectible = c["uncollectible"].get<bool>();
    }

    if (c.contains("effects")) {
        if (!c["effects"].is_array()) schema_fail(where, "'effects' must be an array");
        std::size_t i = 0;
        for (const auto& e : c["effects"]) {
            card.effects.push_back(parse_effect(e, where + ".effects[" + std::to_string(i) + "]"));
            ++i;
        }
    }

    check_effects(card, where);
    return card;
}

ordered_json effect_to_json(const EffectScript& fx) {
    ordered_json e;
    e["trigger"] = to_string(fx.trigger);
    if (fx.condition) e["condition"] = to_string(*fx.condition);
    e["action"] = to_string(fx.action);
    if (action_takes_amount(fx.action)) e["amount"] = fx.amount;
    if (fx.action == EffectAction::SummonToken) e["token"] = fx.token_id;
    e["target"] = to_string(fx.target);
    if (fx.target == EffectTarget::FriendlyMinionsOfTribe) e["tribeArg"] = fx.tribe_arg;
    return e;
}

ordered_json card_to_json(const CardDefinition& card) {
    ordered_json c;
    c["id"] = card.id;
    c["name"] = card.name;
    c["class"] = to_string(card.hero_class);
    c["kind"] = to_string(card.kind);
    c["cost"] = card.mana_cost;
    if (card.kind == CardKind::Minion) {
        c["attack"] = card.attack;
        c["health"] = card.health;
    } else if (card.kind == CardKind::Weapon) {
        c["attack"] = card.attack;
        c["durability"] = card.health;
    }
    if (!card.tribe.empty()) c["tribe"] = card.tribe;
    if (card.taunt) c["taunt"] = true;
    if (card.uncollectible) c["uncollectible"] = true;
    if (!card.effects.empty()) {
        ordered_json arr = ordered_json::array();
        for (const EffectScript& fx : card.effects) arr.push_back(effect_to_json(fx));
        c["effects"] = arr;
    }
    return c;
}

ordered_json parse_document(const std::string& document) {
    try {
        return ordered_json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        // e.byte is the offset of the failure; report line/column for humans.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < document.size(); ++i) {
            if (document[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("JSON parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what());
    }
}

}  // namespace

CardSet load_card_set(const std::string& document) {
    const ordered_json doc = parse_document(document);
    if (!doc.is_object()) throw SchemaError("top level must be an object");
    require_fields(doc, "top level", {"version", "cards"});
    const std::string version = require_string(doc, "top level", "version");
    if (!doc.contains("cards") || !doc["cards"].is_array())
        throw SchemaError("top level: missing 'cards' array");

    std::vector<CardDefinition> cards;
    cards.reserve(doc["cards"].size());
    std::size_t i = 0;
    for (const auto& c : doc["cards"]) {
        cards.push_back(parse_card(c, i));
        ++i;
    }

    CardSet set(version, std::move(cards));  // throws DuplicateId

    // Cross-references: every summoned token must exist and be an
    // uncollectible minion.
    for (const CardDefinition& card : set.cards()) {
        for (const EffectScript& fx : card.effects) {
            if (fx.action != EffectAction::SummonToken) continue;
            const CardDefinition* token = set.find(fx.token_id);
            if (!token)
                throw SchemaError("card '" + card.id + "': token '" + fx.token_id +
                                  "' is not in the set");
            if (token->kind != CardKind::Minion)
                throw SchemaError("card '" + card.id + "': token '" + fx.token_id +
                                  "' must be a Minion");
            if (!token->uncollectible)
                throw SchemaError("card '" + card.id + "': token '" + fx.token_id +
                                  "' must be uncollectible");
        }
    }
    return set;
}

std::string serialize_card_set(const CardSet& set) {
    std::vector<const CardDefinition*> sorted;
    sorted.reserve(set.size());
    for (const CardDefinition& c : set.cards()) sorted.push_back(&c);
    std::sort(sorted.begin(), sorted.end(),
              [](const CardDefinition* a, const CardDefinition* b) { return a->id < b->id; });

    ordered_json doc;
    doc["version"] = set.version();
    ordered_json arr = ordered_json::array();
    for (const CardDefinition* c : sorted) arr.push_back(card_to_json(*c));
    doc["cards"] = arr;
    return doc.dump(2) + "\n";
}

DeckSpec load_deck(const std::string& document) {
    const ordered_json doc = parse_document(document);
    if (!doc.is_object()) throw SchemaError("deck: top level must be an object");
    require_fields(doc, "deck", {"name", "class", "archetype", "cards"});

    DeckSpec deck;
    deck.name = require_string(doc, "deck", "name");
    const std::string cls = require_string(doc, "deck", "class");
    auto hc = hero_class_from_string(cls);
    if (!hc) throw SchemaError("deck: unknown class '" + cls + "'");
    deck.hero_class = *hc;

    if (doc.contains("archetype")) {
        const std::string arch = require_string(doc, "deck", "archetype");
        auto a = deck_archetype_from_string(arch);
        if (!a) throw SchemaError("deck: unknown archetype '" + arch + "'");
        deck.archetype = *a;
    }

    if (!doc.contains("cards") || !doc["cards"].is_array())
        throw SchemaError("deck: missing 'cards' array");
    for (const auto& id : doc["cards"]) {
        if (!id.is_string()) throw SchemaError("deck: card entries must be id strings");
        deck.card_ids.push_back(id.get<std::string>());
    }
    return deck;
}

std::string serialize_deck(const DeckSpec& deck) {
    ordered_json doc;
    doc["name"] = deck.name;
    doc["class"] = to_string(deck.hero_class);
    if (deck.archetype) doc["archetype"] = to_string(*deck.archetype);
    doc["cards"] = deck.card_ids;
    return doc.dump(2) + "\n";
}

}  // namespace ccg
