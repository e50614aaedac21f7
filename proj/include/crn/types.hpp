#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace crn {

using Vec2 = Eigen::Vector2d;

/// Ground-truth target identity. Assigned monotonically from 0 and never reused.
struct TargetId {
    std::uint32_t value = 0;
    auto operator<=>(const TargetId&) const = default;
};

/// Radar node identity, 1-based (k in 1..M).
struct NodeId {
    int value = 1;
    auto operator<=>(const NodeId&) const = default;
    std::size_t index() const { return static_cast<std::size_t>(value - 1); }
    static NodeId from_index(std::size_t i) { return NodeId{static_cast<int>(i) + 1}; }
};

enum class ErrorCode {
    InvalidArgument,
    Config,
    Io,
    Protocol,
    Numerical,
    Logic,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace crn

template <>
struct std::hash<crn::TargetId> {
    std::size_t operator()(const crn::TargetId& id) const noexcept {
        return std::hash<std::uint32_t>{}(id.value);
    }
};
