#pragma once

#include <stdexcept>
#include <string>

namespace envlie {

/// Stable machine-readable failure categories; the CLI maps these to exit codes.
enum class errc {
    tag_mismatch,
    invalid_element,
    invalid_input,
    pole,
    out_of_domain,
    zero_division,
    degenerate_ruling,
    degenerate_plane,
    stationary_instant,
    no_intersection,
    empty_region,
    bad_scene,
    io_failure,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::tag_mismatch: return "tag_mismatch";
        case errc::invalid_element: return "invalid_element";
        case errc::invalid_input: return "invalid_input";
        case errc::pole: return "pole";
        case errc::out_of_domain: return "out_of_domain";
        case errc::zero_division: return "zero_division";
        case errc::degenerate_ruling: return "degenerate_ruling";
        case errc::degenerate_plane: return "degenerate_plane";
        case errc::stationary_instant: return "stationary_instant";
        case errc::no_intersection: return "no_intersection";
        case errc::empty_region: return "empty_region";
        case errc::bad_scene: return "bad_scene";
        case errc::io_failure: return "io_failure";
    }
    return "unknown";
}

} // namespace envlie
