#pragma once

#include <stdexcept>
#include <string>

namespace ccg {

// Card file / deck file problems.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DuplicateId : std::runtime_error {
    explicit DuplicateId(const std::string& id)
        : std::runtime_error("duplicate card id: " + id), card_id(id) {}
    std::string card_id;
};

struct UnknownCard : std::runtime_error {
    explicit UnknownCard(const std::string& id)
        : std::runtime_error("unknown card id: " + id), card_id(id) {}
    std::string card_id;
};

struct InvalidDeck : std::runtime_error {
    explicit InvalidDeck(const std::string& msg) : std::runtime_error(msg) {}
};

// Engine errors.
struct IllegalAction : std::runtime_error {
    explicit IllegalAction(const std::string& msg) : std::runtime_error(msg) {}
};

struct GameAlreadyOver : std::runtime_error {
    GameAlreadyOver() : std::runtime_error("game is already over") {}
};

// Observation errors.
struct InconsistentObservation : std::runtime_error {
    explicit InconsistentObservation(const std::string& msg) : std::runtime_error(msg) {}
};

// Driver / tournament configuration errors.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct TooFewAgents : ConfigError {
    TooFewAgents() : ConfigError("a tournament needs at least two agents") {}
};

struct InvalidTrackConfig : ConfigError {
    explicit InvalidTrackConfig(const std::string& msg) : ConfigError(msg) {}
};

struct InvalidGroupSize : ConfigError {
    explicit InvalidGroupSize(const std::string& msg) : ConfigError(msg) {}
};

struct AgentFault : std::runtime_error {
    explicit AgentFault(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ccg
