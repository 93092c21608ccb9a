#pragma once

#include <istream>
#include <ostream>

#include "retail/session.hpp"

namespace retail {

inline constexpr int kExitDisconnected = 3;

/// Serves one episode over newline-delimited JSON. Requests are
/// {"id", "tool", "arguments"}; the engine announces phases with
/// {"event": "phase_start"} and finishes with {"event": "episode_end"}.
/// Returns 0 once the episode ends, kExitDisconnected if input closes first.
int serve(Session& session, std::istream& in, std::ostream& out);

}  // namespace retail
