#pragma once

#include "csr/geometry.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace csr {

enum class ApId : std::uint32_t {};
enum class StationId : std::uint32_t {};

constexpr std::uint32_t to_int(ApId id) { return static_cast<std::uint32_t>(id); }
constexpr std::uint32_t to_int(StationId id) { return static_cast<std::uint32_t>(id); }

struct ApNode {
    ApId id;
    Position pos;
};

struct StationNode {
    StationId id;
    Position pos;
    ApId ap;
};

/// A downlink AP -> station link.
struct Pair {
    ApId ap;
    StationId station;

    friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// Immutable description of the physical scene. Construction accepts
/// malformed input so that validate() can report every problem; consumers
/// that need a well-formed scene call require_valid().
class Topology {
public:
    Topology() = default;
    Topology(std::vector<ApNode> aps, std::vector<StationNode> stations, std::vector<Wall> walls = {});

    const std::vector<ApNode>& aps() const { return aps_; }
    const std::vector<StationNode>& stations() const { return stations_; }
    const std::vector<Wall>& walls() const { return walls_; }

    std::size_t ap_count() const { return aps_.size(); }

    /// Index of the AP in aps(); this is the canonical AP ordering.
    std::optional<std::size_t> ap_index(ApId id) const;
    std::optional<std::size_t> station_index(StationId id) const;

    Position ap_position(ApId id) const;
    Position station_position(StationId id) const;
    ApId owner(StationId id) const;

    /// Stations associated with an AP, in declaration order.
    const std::vector<StationId>& stations_of(ApId id) const;

    bool is_associated(const Pair& p) const;

    /// Same AP ids, station ids and associations (positions may differ).
    bool same_structure(const Topology& other) const;

    void require_valid() const;

private:
    std::vector<ApNode> aps_;
    std::vector<StationNode> stations_;
    std::vector<Wall> walls_;
    std::unordered_map<std::uint32_t, std::size_t> ap_index_;
    std::unordered_map<std::uint32_t, std::size_t> station_index_;
    std::vector<std::vector<StationId>> stations_by_ap_;
};

/// Every invariant violation found in the topology; empty means valid.
std::vector<std::string> validate(const Topology& topology);

/// Set of concurrently transmitting pairs, stored in ascending AP order.
/// Nonempty and with at most one pair per AP.
class TransmissionSet {
public:
    explicit TransmissionSet(std::vector<Pair> pairs);
    TransmissionSet(std::initializer_list<Pair> pairs)
        : TransmissionSet(std::vector<Pair>(pairs)) {}

    const std::vector<Pair>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    bool contains(const Pair& p) const;
    bool contains_ap(ApId ap) const;

    auto begin() const { return pairs_.begin(); }
    auto end() const { return pairs_.end(); }

    friend auto operator<=>(const TransmissionSet&, const TransmissionSet&) = default;

private:
    std::vector<Pair> pairs_;
};

} // namespace csr
