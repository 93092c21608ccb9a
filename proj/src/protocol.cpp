#include "retail/protocol.hpp"

#include <string>

#include <spdlog/spdlog.h>

namespace retail {

namespace {

void send(std::ostream& out, const Json& message) {
    out << message.dump() << '\n';
    out.flush();
}

Json protocol_error(const Json& id, std::string message) {
    return {{"id", id}, {"ok", false}, {"error", {{"code", code::protocol_error}, {"message", std::move(message)}}}};
}

}  // namespace

int serve(Session& session, std::istream& in, std::ostream& out) {
    Phase announced_phase = session.phase();
    int announced_day = session.day();
    send(out, {{"event", "phase_start"}, {"phase", to_string(announced_phase)}, {"day", announced_day}});

    std::string line;
    while (!session.over()) {
        if (!std::getline(in, line)) {
            spdlog::error("client disconnected on day {} during the {} phase", session.day(),
                          to_string(session.phase()));
            return kExitDisconnected;
        }
        if (line.empty() || line == "\r") continue;

        Json request;
        try {
            request = Json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            send(out, protocol_error(nullptr, std::string("malformed request: ") + e.what()));
            continue;
        }
        const Json id = request.is_object() ? request.value("id", Json(nullptr)) : Json(nullptr);
        if (!request.is_object() || !request.contains("tool") || !request["tool"].is_string()) {
            send(out, protocol_error(id, "requests need a string 'tool'"));
            continue;
        }
        Json arguments = request.value("arguments", Json::object());
        if (arguments.is_null()) arguments = Json::object();

        const auto result = session.call(request["tool"].get<std::string>(), std::move(arguments));
        send(out, to_wire(result, id));

        if (session.over()) break;
        if (session.phase() != announced_phase || session.day() != announced_day) {
            announced_phase = session.phase();
            announced_day = session.day();
            send(out, {{"event", "phase_start"}, {"phase", to_string(announced_phase)}, {"day", announced_day}});
        }
    }
    send(out, {{"event", "episode_end"}, {"reason", session.end_reason()}, {"days", session.days_completed()}});
    return 0;
}

}  // namespace retail
