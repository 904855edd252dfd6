#include "ccg/process_agent.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <csignal>
#include <cstring>

#include "ccg/errors.hpp"
#include "json.hpp"

namespace ccg {

using nlohmann::ordered_json;

ProcessAgent::ProcessAgent(std::string command, std::string display_name)
    : command_(std::move(command)),
      name_(display_name.empty() ? "process(" + command_ + ")" : std::move(display_name)) {}

ProcessAgent::~ProcessAgent() { shutdown(); }

void ProcessAgent::ensure_running() {
    if (child_pid_ >= 0) return;

    int to_pipe[2];
    int from_pipe[2];
    if (pipe(to_pipe) != 0 || pipe(from_pipe) != 0)
        throw AgentFault("failed to create pipes for agent process");

    const pid_t pid = fork();
    if (pid < 0) throw AgentFault("failed to fork agent process");
    if (pid == 0) {
        dup2(to_pipe[0], STDIN_FILENO);
        dup2(from_pipe[1], STDOUT_FILENO);
        close(to_pipe[0]);
        close(to_pipe[1]);
        close(from_pipe[0]);
        close(from_pipe[1]);
        execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(to_pipe[0]);
    close(from_pipe[1]);
    child_pid_ = pid;
    to_child_ = to_pipe[1];
    from_child_ = from_pipe[0];
}

void ProcessAgent::send_line(const std::string& line) {
    ensure_running();
    std::string out = line;
    out += '\n';
    std::size_t written = 0;
    while (written < out.size()) {
        const ssize_t n = write(to_child_, out.data() + written, out.size() - written);
        if (n <= 0) throw AgentFault("agent process closed its input");
        written += static_cast<std::size_t>(n);
    }
}

std::string ProcessAgent::read_line() {
    while (true) {
        const auto pos = read_buffer_.find('\n');
        if (pos != std::string::npos) {
            std::string line = read_buffer_.substr(0, pos);
            read_buffer_.erase(0, pos + 1);
            return line;
        }
        char chunk[4096];
        const ssize_t n = read(from_child_, chunk, sizeof chunk);
        if (n <= 0) throw AgentFault("agent process closed its output");
        read_buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

void ProcessAgent::expect_ack() {
    const ordered_json reply = ordered_json::parse(read_line(), nullptr, false);
    if (reply.is_discarded() || !reply.is_object() || reply.value("type", "") != "ack")
        throw AgentFault("agent process did not acknowledge");
}

void ProcessAgent::initialize_agent() {
    ordered_json msg;
    msg["type"] = "initialize_agent";
    send_line(msg.dump());
    expect_ack();
}

void ProcessAgent::initialize_game(const GameContext& ctx) {
    ordered_json msg;
    msg["type"] = "initialize_game";
    msg["seat"] = to_string(ctx.seat);
    msg["seed"] = ctx.seed;
    msg["deck"] = ctx.deck_name;
    ordered_json cfg;
    cfg["turnLimit"] = ctx.config.turn_limit;
    cfg["budgetMs"] = ctx.config.time_budget_ms;
    cfg["handLimit"] = ctx.config.hand_limit;
    cfg["boardLimit"] = ctx.config.board_limit;
    msg["config"] = cfg;
    send_line(msg.dump());
    expect_ack();
}

Action ProcessAgent::get_move(const Observation& obs) {
    ordered_json msg;
    msg["type"] = "observation";
    msg["observation"] = ordered_json::parse(serialize_observation(obs));
    send_line(msg.dump());

    const ordered_json reply = ordered_json::parse(read_line(), nullptr, false);
    if (reply.is_discarded() || !reply.is_object() || reply.value("type", "") != "action" ||
        !reply.contains("action"))
        throw AgentFault("agent process sent a malformed action reply");
    return action_from_json(reply["action"]);
}

void ProcessAgent::finalize_game(const GameResult& result) {
    ordered_json msg;
    msg["type"] = "finalize_game";
    ordered_json r;
    r["outcome"] = result.is_draw() ? "draw" : "win";
    if (result.winner) r["winner"] = to_string(*result.winner);
    r["reason"] = to_string(result.reason);
    r["finalTurn"] = result.final_turn;
    msg["result"] = r;
    send_line(msg.dump());
    expect_ack();
}

void ProcessAgent::finalize_agent() {
    if (child_pid_ < 0) return;
    try {
        ordered_json msg;
        msg["type"] = "finalize_agent";
        send_line(msg.dump());
        expect_ack();
    } catch (const std::exception&) {
        // The process may have exited already; shutdown below reaps it.
    }
    shutdown();
}

void ProcessAgent::shutdown() {
    if (child_pid_ < 0) return;
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    to_child_ = from_child_ = -1;
    int status = 0;
    waitpid(child_pid_, &status, 0);
    child_pid_ = -1;
}

}  // namespace ccg
