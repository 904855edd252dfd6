#pragma once

#include <string>

#include "ccg/agent.hpp"

namespace ccg {

// Bridges an agent written in any language: the given shell command is
// spawned once per session and spoken to over newline-delimited JSON on
// its standard input/output.
//
// Driver -> agent, one object per line:
//   {"type":"initialize_agent"}
//   {"type":"initialize_game","seat":...,"seed":...,"deck":...,"config":{...}}
//   {"type":"observation","observation":{...}}      (expects an action reply)
//   {"type":"finalize_game","result":{...}}
//   {"type":"finalize_agent"}
//
// Agent -> driver:
//   {"type":"action","action":{...}}   in reply to an observation
//   {"type":"ack"}                     in reply to everything else
class ProcessAgent : public Agent {
public:
    explicit ProcessAgent(std::string command, std::string display_name = "");
    ~ProcessAgent() override;

    ProcessAgent(const ProcessAgent&) = delete;
    ProcessAgent& operator=(const ProcessAgent&) = delete;

    void initialize_agent() override;
    void initialize_game(const GameContext& ctx) override;
    Action get_move(const Observation& obs) override;
    void finalize_game(const GameResult& result) override;
    void finalize_agent() override;
    std::string name() const override { return name_; }

private:
    void ensure_running();
    void send_line(const std::string& line);
    std::string read_line();
    void expect_ack();
    void shutdown();

    std::string command_;
    std::string name_;
    int child_pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::string read_buffer_;
};

}  // namespace ccg
