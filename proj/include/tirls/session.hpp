#pragma once

#include <cstdint>
#include <filesystem>

#include "tirls/solvers.hpp"

namespace tirls {

inline constexpr int kSessionFormatVersion = 1;

/// Persisted state of a streaming solve.
struct SessionState {
    TrlsProblem problem;
    Tensor3 x;  ///< committed solution for (A, B, lambda)
    Subsolver sub;
    Index sample_count = 0;
    std::uint64_t seed = 0;
};

/**
 * On-disk layout:
 *
 *     <dir>/manifest.txt        key=value, names the committed generation
 *     <dir>/gen-<N>/A.t3d       data of generation N
 *     <dir>/gen-<N>/B.t3d
 *     <dir>/gen-<N>/X.t3d
 *     <dir>/lock                present while a writer holds the session
 *
 * A commit writes generation N+1 completely, then renames a new manifest
 * over the old one. Interrupting a commit at any point leaves a manifest that
 * names a complete generation.
 */
class SessionLock {
public:
    /// Throws SessionError if another writer holds the lock.
    explicit SessionLock(const std::filesystem::path& dir);
    ~SessionLock();
    SessionLock(const SessionLock&) = delete;
    SessionLock& operator=(const SessionLock&) = delete;

private:
    std::filesystem::path path_;
};

/// Creates a new session directory; fails if one already exists there.
void create_session(const std::filesystem::path& dir, const SessionState& state);

/// Loads the committed state, checking manifest against file shapes.
SessionState load_session(const std::filesystem::path& dir);

/// Test hook: stop a commit after the new generation is written but before
/// the manifest is swapped, as a crash would.
enum class CommitFault { none, after_write };

void commit_session(const std::filesystem::path& dir, const SessionState& state,
                    CommitFault fault = CommitFault::none);

}  // namespace tirls
