#include "tirls/session.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <string>

#include "tirls/errors.hpp"
#include "tirls/io.hpp"

namespace tirls {

namespace fs = std::filesystem;

namespace {

constexpr const char* kManifestName = "manifest.txt";

fs::path generation_dir(const fs::path& dir, long long gen) {
    return dir / ("gen-" + std::to_string(gen));
}

std::string subsolver_name(Subsolver::Kind k) {
    return k == Subsolver::Kind::direct ? "direct" : "gkt";
}

Subsolver::Kind parse_subsolver(const std::string& s) {
    if (s == "gkt") {
        return Subsolver::Kind::gkt;
    }
    if (s == "direct") {
        return Subsolver::Kind::direct;
    }
    throw SessionError("unknown subsolver '" + s + "' in session manifest");
}

void write_generation(const fs::path& dir, long long gen, const SessionState& state,
                      CommitFault fault) {
    const fs::path gdir = generation_dir(dir, gen);
    fs::remove_all(gdir);
    fs::create_directories(gdir);
    write_tensor(gdir / "A.t3d", state.problem.a);
    write_tensor(gdir / "B.t3d", state.problem.b);
    write_tensor(gdir / "X.t3d", state.x);
    if (fault == CommitFault::after_write) {
        return;
    }

    Manifest m;
    m["format_version"] = std::to_string(kSessionFormatVersion);
    m["generation"] = std::to_string(gen);
    m["lambda"] = format_double(state.problem.lambda);
    m["subsolver"] = subsolver_name(state.sub.kind);
    m["k"] = std::to_string(state.sub.steps);
    m["sample_count"] = std::to_string(state.sample_count);
    m["seed"] = std::to_string(state.seed);
    m["m"] = std::to_string(state.problem.m());
    m["n"] = std::to_string(state.problem.n());
    m["c"] = std::to_string(state.problem.c());
    m["p"] = std::to_string(state.problem.p());
    write_manifest(dir / kManifestName, m);
}

void validate_state(const SessionState& state) {
    state.problem.validate();
    const Shape3 xs{state.problem.n(), state.problem.c(), state.problem.p()};
    if (state.x.shape() != xs) {
        throw SessionError("solution shape " + to_string(state.x.shape()) + " does not match " +
                           to_string(xs));
    }
}

}  // namespace

SessionLock::SessionLock(const fs::path& dir) : path_(dir / "lock") {
    const int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
        throw SessionError("session " + dir.string() + " is locked by another writer (" +
                           path_.string() + " exists)");
    }
    const std::string pid = std::to_string(::getpid()) + "\n";
    [[maybe_unused]] auto written = ::write(fd, pid.data(), pid.size());
    ::close(fd);
}

SessionLock::~SessionLock() {
    std::error_code ec;
    fs::remove(path_, ec);
}

void create_session(const fs::path& dir, const SessionState& state) {
    validate_state(state);
    if (fs::exists(dir / kManifestName)) {
        throw SessionError("a session already exists in " + dir.string());
    }
    fs::create_directories(dir);
    SessionLock lock(dir);
    write_generation(dir, 1, state, CommitFault::none);
}

SessionState load_session(const fs::path& dir) {
    Manifest m;
    try {
        m = read_manifest(dir / kManifestName);
    } catch (const FormatError& e) {
        throw SessionError(std::string("cannot load session: ") + e.what());
    }
    try {
        if (manifest_int(m, "format_version") != kSessionFormatVersion) {
            throw SessionError("unsupported session format version " +
                               manifest_get(m, "format_version"));
        }
        const fs::path gdir = generation_dir(dir, manifest_int(m, "generation"));
        SessionState s;
        s.problem.a = read_tensor(gdir / "A.t3d");
        s.problem.b = read_tensor(gdir / "B.t3d");
        s.x = read_tensor(gdir / "X.t3d");
        s.problem.lambda = manifest_double(m, "lambda");
        s.sub.kind = parse_subsolver(manifest_get(m, "subsolver"));
        s.sub.steps = manifest_int(m, "k");
        s.sample_count = manifest_int(m, "sample_count");
        s.seed = static_cast<std::uint64_t>(std::stoull(manifest_get(m, "seed")));
        s.sub.seed = s.seed;

        const Shape3 declared_a{manifest_int(m, "m"), manifest_int(m, "n"), manifest_int(m, "p")};
        const Shape3 declared_b{manifest_int(m, "m"), manifest_int(m, "c"), manifest_int(m, "p")};
        if (s.problem.a.shape() != declared_a || s.problem.b.shape() != declared_b) {
            throw SessionError("session corrupt: manifest declares A " + to_string(declared_a) +
                               ", B " + to_string(declared_b) + " but files hold " +
                               to_string(s.problem.a.shape()) + ", " +
                               to_string(s.problem.b.shape()));
        }
        validate_state(s);
        return s;
    } catch (const SessionError&) {
        throw;
    } catch (const Error& e) {
        throw SessionError(std::string("session corrupt: ") + e.what());
    } catch (const std::exception& e) {
        throw SessionError(std::string("session corrupt: ") + e.what());
    }
}

void commit_session(const fs::path& dir, const SessionState& state, CommitFault fault) {
    validate_state(state);
    const Manifest current = read_manifest(dir / kManifestName);
    const long long gen = manifest_int(current, "generation");
    write_generation(dir, gen + 1, state, fault);
    if (fault == CommitFault::after_write) {
        return;
    }
    std::error_code ec;
    fs::remove_all(generation_dir(dir, gen), ec);
}

}  // namespace tirls
