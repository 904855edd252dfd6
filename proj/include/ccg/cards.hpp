#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ccg {

// ---------------------------------------------------------------------------
// Static card data: definitions, effect scripts, sets, deck specs.
// Everything here is immutable after construction and safe to share
// across threads.
// ---------------------------------------------------------------------------

enum class HeroClass {
    Druid,
    Hunter,
    Mage,
    Paladin,
    Priest,
    Rogue,
    Shaman,
    Warlock,
    Warrior,
    Neutral,  // class-free cards; not playable as a hero
};

inline constexpr int kPlayableClassCount = 9;

bool is_playable_class(HeroClass c);
const char* to_string(HeroClass c);
std::optional<HeroClass> hero_class_from_string(const std::string& s);

enum class CardKind { Minion, Spell, Secret, Weapon };

const char* to_string(CardKind k);
std::optional<CardKind> card_kind_from_string(const std::string& s);

enum class EffectTrigger { Battlecry, Deathrattle, OnCast, Aura, SecretTrigger };
enum class SecretCondition { EnemyMinionAttacks, EnemyPlaysMinion, EnemySpellCast };
enum class EffectAction {
    Damage,
    Heal,
    BuffAttack,
    BuffHealth,
    DrawCards,
    SummonToken,
    DestroyMinion,
    DestroyWeapon,
    GainMana,
};
enum class EffectTarget {
    ChosenTarget,
    Self,
    OwnHero,
    EnemyHero,
    AllEnemyMinions,
    AllFriendlyMinions,
    RandomEnemyMinion,
    FriendlyMinionsOfTribe,
    TriggeringEntity,
};

const char* to_string(EffectTrigger t);
const char* to_string(SecretCondition c);
const char* to_string(EffectAction a);
const char* to_string(EffectTarget t);
std::optional<EffectTrigger> effect_trigger_from_string(const std::string& s);
std::optional<SecretCondition> secret_condition_from_string(const std::string& s);
std::optional<EffectAction> effect_action_from_string(const std::string& s);
std::optional<EffectTarget> effect_target_from_string(const std::string& s);

// One scripted behavior of a card. The vocabulary is closed: a fixed
// trigger, a fixed action, a fixed target selector, plus the scalar or
// string argument some of them take.
struct EffectScript {
    EffectTrigger trigger = EffectTrigger::Battlecry;
    std::optional<SecretCondition> condition;  // SecretTrigger only
    EffectAction action = EffectAction::Damage;
    int amount = 0;          // Damage/Heal/Buff*/DrawCards/GainMana
    std::string token_id;    // SummonToken
    EffectTarget target = EffectTarget::Self;
    std::string tribe_arg;   // FriendlyMinionsOfTribe

    bool operator==(const EffectScript&) const = default;
};

// True when the action carries a numeric amount.
bool action_takes_amount(EffectAction a);

struct CardDefinition {
    std::string id;    // unique token within a set
    std::string name;  // display string
    HeroClass hero_class = HeroClass::Neutral;
    CardKind kind = CardKind::Minion;
    int mana_cost = 0;
    int attack = 0;  // Minion and Weapon only
    int health = 0;  // Minion health / Weapon durability
    std::string tribe;        // Minion only, empty = none
    bool taunt = false;       // Minion only
    bool uncollectible = false;  // tokens; excluded from deck building
    std::vector<EffectScript> effects;

    bool operator==(const CardDefinition&) const = default;
};

// Reserved placeholder token used by observations for hidden cards.
// No card set may define a card with this id.
inline constexpr const char* kDummyCardId = "dummy";

class CardSet {
public:
    CardSet() = default;
    // Throws DuplicateId when two cards share an id.
    CardSet(std::string version, std::vector<CardDefinition> cards);

    const CardDefinition& at(const std::string& id) const;  // throws UnknownCard
    const CardDefinition* find(const std::string& id) const;
    bool contains(const std::string& id) const { return find(id) != nullptr; }

    std::size_t size() const { return cards_.size(); }
    const std::string& version() const { return version_; }
    const std::vector<CardDefinition>& cards() const { return cards_; }

    // Set equality: same version and same definitions, order-insensitive.
    bool operator==(const CardSet& other) const;

private:
    std::string version_;
    std::vector<CardDefinition> cards_;
    std::unordered_map<std::string, std::size_t> index_;
};

enum class DeckArchetype { Aggro, MidRange, Control };

const char* to_string(DeckArchetype a);
std::optional<DeckArchetype> deck_archetype_from_string(const std::string& s);

inline constexpr int kDeckSize = 30;
inline constexpr int kMaxCopiesPerCard = 2;

struct DeckSpec {
    std::string name;
    HeroClass hero_class = HeroClass::Mage;
    std::optional<DeckArchetype> archetype;
    std::vector<std::string> card_ids;  // exactly kDeckSize entries

    bool operator==(const DeckSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Deck validation. Violations are report entries, never exceptions.
// ---------------------------------------------------------------------------

struct DeckViolation {
    enum class Kind {
        DeckSizeInvalid,    // value = actual size
        UnknownCard,        // card_id
        ClassMismatch,      // card_id
        CopyLimitExceeded,  // card_id, value = copies found
        UncollectibleCard,  // card_id
        UnplayableClass,    // deck class is Neutral
    };
    Kind kind;
    std::string card_id;
    int value = 0;

    std::string describe() const;
    bool operator==(const DeckViolation&) const = default;
};

std::vector<DeckViolation> validate_deck(const DeckSpec& deck, const CardSet& set);

// ---------------------------------------------------------------------------
// Card / deck file formats (JSON, see README for the schema). Unknown
// fields are rejected.
// ---------------------------------------------------------------------------

CardSet load_card_set(const std::string& document);
std::string serialize_card_set(const CardSet& set);  // canonical: cards sorted by id

DeckSpec load_deck(const std::string& document);
std::string serialize_deck(const DeckSpec& deck);

// The bundled desk-scale set: vanilla curve minions, tribal synergy
// minions, damage/heal/buff/draw spells, secrets for every trigger
// condition, weapons, and the tokens the engine summons.
const CardSet& builtin_card_set();

}  // namespace ccg
