#include "ccg/cards.hpp"

namespace ccg {

namespace {

CardDefinition minion(std::string id, std::string name, HeroClass cls, int cost, int attack,
                      int health) {
    CardDefinition c;
    c.id = std::move(id);
    c.name = std::move(name);
    c.hero_class = cls;
    c.kind = CardKind::Minion;
    c.mana_cost = cost;
    c.attack = attack;
    c.health = health;
    return c;
}

CardDefinition spell(std::string id, std::string name, HeroClass cls, int cost,
                     EffectScript effect) {
    CardDefinition c;
    c.id = std::move(id);
    c.name = std::move(name);
    c.hero_class = cls;
    c.kind = CardKind::Spell;
    c.mana_cost = cost;
    effect.trigger = EffectTrigger::OnCast;
    c.effects.push_back(effect);
    return c;
}

CardDefinition secret(std::string id, std::string name, HeroClass cls, int cost,
                      SecretCondition condition, EffectScript effect) {
    CardDefinition c;
    c.id = std::move(id);
    c.name = std::move(name);
    c.hero_class = cls;
    c.kind = CardKind::Secret;
    c.mana_cost = cost;
    effect.trigger = EffectTrigger::SecretTrigger;
    effect.condition = condition;
    c.effects.push_back(effect);
    return c;
}

CardDefinition weapon(std::string id, std::string name, HeroClass cls, int cost, int attack,
                      int durability) {
    CardDefinition c;
    c.id = std::move(id);
    c.name = std::move(name);
    c.hero_class = cls;
    c.kind = CardKind::Weapon;
    c.mana_cost = cost;
    c.attack = attack;
    c.health = durability;
    return c;
}

EffectScript fx(EffectAction action, EffectTarget target, int amount = 0, std::string arg = "") {
    EffectScript e;
    e.action = action;
    e.target = target;
    e.amount = amount;
    if (action == EffectAction::SummonToken) e.token_id = std::move(arg);
    if (target == EffectTarget::FriendlyMinionsOfTribe) e.tribe_arg = std::move(arg);
    return e;
}

EffectScript battlecry(EffectAction action, EffectTarget target, int amount = 0,
                       std::string arg = "") {
    EffectScript e = fx(action, target, amount, std::move(arg));
    e.trigger = EffectTrigger::Battlecry;
    return e;
}

EffectScript deathrattle(EffectAction action, EffectTarget target, int amount = 0,
                         std::string arg = "") {
    EffectScript e = fx(action, target, amount, std::move(arg));
    e.trigger = EffectTrigger::Deathrattle;
    return e;
}

EffectScript aura(EffectAction action, EffectTarget target, int amount, std::string tribe = "") {
    EffectScript e = fx(action, target, amount, std::move(tribe));
    e.trigger = EffectTrigger::Aura;
    return e;
}

std::vector<CardDefinition> build_cards() {
    using A = EffectAction;
    using T = EffectTarget;
    std::vector<CardDefinition> cards;

    // Vanilla curve, one neutral minion per mana cost 1..10.
    cards.push_back(minion("scrappy_squire", "Scrappy Squire", HeroClass::Neutral, 1, 1, 2));
    cards.push_back(minion("stone_porter", "Stone Porter", HeroClass::Neutral, 2, 2, 3));
    cards.push_back(minion("caravan_guard", "Caravan Guard", HeroClass::Neutral, 3, 3, 4));
    cards.push_back(minion("oak_golem", "Oak Golem", HeroClass::Neutral, 4, 4, 5));
    cards.push_back(minion("hill_ogre", "Hill Ogre", HeroClass::Neutral, 5, 5, 6));
    cards.push_back(minion("bog_behemoth", "Bog Behemoth", HeroClass::Neutral, 6, 6, 7));
    cards.push_back(minion("war_colossus", "War Colossus", HeroClass::Neutral, 7, 7, 8));
    cards.push_back(minion("elder_wyrm", "Elder Wyrm", HeroClass::Neutral, 8, 8, 9));
    cards.push_back(minion("ancient_titan", "Ancient Titan", HeroClass::Neutral, 9, 9, 10));
    cards.push_back(minion("world_breaker", "World Breaker", HeroClass::Neutral, 10, 10, 11));

    // Murloc package. Reef Chanter carries the tribal attack aura.
    {
        CardDefinition c = minion("tidepool_scout", "Tidepool Scout", HeroClass::Neutral, 1, 1, 1);
        c.tribe = "Murloc";
        cards.push_back(c);
    }
    {
        CardDefinition c = minion("brine_raider", "Brine Raider", HeroClass::Neutral, 2, 2, 1);
        c.tribe = "Murloc";
        cards.push_back(c);
    }
    {
        CardDefinition c = minion("reef_chanter", "Reef Chanter", HeroClass::Neutral, 2, 1, 2);
        c.tribe = "Murloc";
        c.effects.push_back(aura(A::BuffAttack, T::FriendlyMinionsOfTribe, 1, "Murloc"));
        cards.push_back(c);
    }
    {
        CardDefinition c = minion("tide_caller", "Tide Caller", HeroClass::Neutral, 3, 2, 3);
        c.tribe = "Murloc";
        c.effects.push_back(battlecry(A::DrawCards, T::Self, 1));
        cards.push_back(c);
    }

    // Taunt wall.
    {
        CardDefinition c = minion("shieldgrub", "Shieldgrub", HeroClass::Neutral, 1, 0, 4);
        c.taunt = true;
        cards.push_back(c);
    }
    {
        CardDefinition c = minion("gate_warden", "Gate Warden", HeroClass::Neutral, 3, 2, 5);
        c.taunt = true;
        cards.push_back(c);
    }
    {
        CardDefinition c = minion("ivory_tortoise", "Ivory Tortoise", HeroClass::Neutral, 5, 4, 8);
        c.taunt = true;
        cards.push_back(c);
    }

    // Neutral minions with scripted effects.
    {
        CardDefinition c = minion("ember_imp", "Ember Imp", HeroClass::Neutral, 2, 2, 1);
        c.effects.push_back(battlecry(A::Damage, T::ChosenTarget, 1));
        cards.push_back(c);
    }
    {
        CardDefinition c = minion("field_medic", "Field Medic", HeroClass::Neutral, 3, 2, 3);
        c.effects.push_back(battlecry(A::Heal, T::ChosenTarget, 2));
        cards.push_back(c);
    }
    {
        CardDefinition c = minion("bone_archer", "Bone Archer", HeroClass::Neutral, 3, 3, 2);
        c.effects.push_back(battlecry(A::Damage, T::RandomEnemyMinion, 1));
        cards.push_back(c);
    }
    {
        CardDefinition c = minion("banner_captain", "Banner Captain", HeroClass::Neutral, 4, 3, 3);
        c.effects.push_back(aura(A::BuffAttack, T::AllFriendlyMinions, 1));
        cards.push_back(c);
    }
    {
        CardDefinition c = minion("clay_shambler", "Clay Shambler", HeroClass::Neutral, 3, 2, 3);
        c.effects.push_back(deathrattle(A::SummonToken, T::Self, 0, "clay_fragment"));
        cards.push_back(c);
    }
    {
        CardDefinition c = minion("rot_hound", "Rot Hound", HeroClass::Neutral, 2, 3, 1);
        c.effects.push_back(deathrattle(A::Damage, T::EnemyHero, 1));
        cards.push_back(c);
    }
    {
        CardDefinition c = minion("lore_keeper", "Lore Keeper", HeroClass::Neutral, 4, 2, 4);
        c.effects.push_back(battlecry(A::DrawCards, T::Self, 1));
        cards.push_back(c);
    }

    // Neutral spells and weapon so every class has the basic tools.
    cards.push_back(spell("stone_sling", "Stone Sling", HeroClass::Neutral, 2,
                          fx(A::Damage, T::ChosenTarget, 2)));
    cards.push_back(spell("scrying_orb", "Scrying Orb", HeroClass::Neutral, 3,
                          fx(A::DrawCards, T::Self, 2)));
    cards.push_back(spell("rust_ritual", "Rust Ritual", HeroClass::Neutral, 2,
                          fx(A::DestroyWeapon, T::EnemyHero)));
    cards.push_back(weapon("rusty_hatchet", "Rusty Hatchet", HeroClass::Neutral, 1, 1, 2));

    // Mage: burn and tempo.
    cards.push_back(spell("flame_lance", "Flame Lance", HeroClass::Mage, 1,
                          fx(A::Damage, T::ChosenTarget, 3)));
    cards.push_back(spell("ring_of_cinders", "Ring of Cinders", HeroClass::Mage, 4,
                          fx(A::Damage, T::AllEnemyMinions, 2)));
    cards.push_back(spell("mana_bloom", "Mana Bloom", HeroClass::Mage, 2,
                          fx(A::GainMana, T::Self, 1)));
    {
        CardDefinition c = minion("spark_adept", "Spark Adept", HeroClass::Mage, 3, 3, 3);
        c.effects.push_back(battlecry(A::Damage, T::EnemyHero, 1));
        cards.push_back(c);
    }
    cards.push_back(secret("glacial_snare", "Glacial Snare", HeroClass::Mage, 2,
                           SecretCondition::EnemyMinionAttacks,
                           fx(A::DestroyMinion, T::TriggeringEntity)));
    cards.push_back(secret("echo_ward", "Echo Ward", HeroClass::Mage, 2,
                           SecretCondition::EnemySpellCast, fx(A::Damage, T::EnemyHero, 2)));

    // Priest: heals, buffs, removal.
    cards.push_back(spell("soothing_light", "Soothing Light", HeroClass::Priest, 2,
                          fx(A::Heal, T::ChosenTarget, 4)));
    cards.push_back(spell("inner_fortitude", "Inner Fortitude", HeroClass::Priest, 1,
                          fx(A::BuffHealth, T::ChosenTarget, 2)));
    cards.push_back(spell("banish", "Banish", HeroClass::Priest, 3,
                          fx(A::DestroyMinion, T::ChosenTarget)));
    {
        CardDefinition c = minion("cloister_guard", "Cloister Guard", HeroClass::Priest, 4, 3, 5);
        c.taunt = true;
        cards.push_back(c);
    }
    cards.push_back(secret("ambush_ward", "Ambush Ward", HeroClass::Priest, 2,
                           SecretCondition::EnemyPlaysMinion,
                           fx(A::Damage, T::TriggeringEntity, 2)));

    // Warrior: weapons and aggression.
    cards.push_back(weapon("iron_cleaver", "Iron Cleaver", HeroClass::Warrior, 2, 2, 2));
    cards.push_back(weapon("oath_blade", "Oath Blade", HeroClass::Warrior, 4, 3, 3));
    cards.push_back(spell("sharpened_edge", "Sharpened Edge", HeroClass::Warrior, 1,
                          fx(A::BuffAttack, T::ChosenTarget, 2)));
    cards.push_back(spell("battle_horn", "Battle Horn", HeroClass::Warrior, 3,
                          fx(A::BuffAttack, T::AllFriendlyMinions, 1)));
    {
        CardDefinition c = minion("pit_brawler", "Pit Brawler", HeroClass::Warrior, 4, 5, 3);
        cards.push_back(c);
    }
    cards.push_back(secret("spiked_barricade", "Spiked Barricade", HeroClass::Warrior, 2,
                           SecretCondition::EnemyMinionAttacks,
                           fx(A::Damage, T::TriggeringEntity, 2)));

    // Tokens summoned by effects and hero powers.
    {
        CardDefinition c = minion("clay_fragment", "Clay Fragment", HeroClass::Neutral, 1, 2, 1);
        c.uncollectible = true;
        cards.push_back(c);
    }
    {
        CardDefinition c = minion("recruit_token", "Squire Recruit", HeroClass::Neutral, 1, 1, 1);
        c.uncollectible = true;
        cards.push_back(c);
    }

    return cards;
}

}  // namespace

const CardSet& builtin_card_set() {
    static const CardSet set("builtin-1", build_cards());
    return set;
}

}  // namespace ccg
