#include "csr/topology.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace csr {

namespace {

bool finite(Position p)
{
    return std::isfinite(p.x) && std::isfinite(p.y);
}

const std::vector<StationId> kNoStations;

} // namespace

Topology::Topology(std::vector<ApNode> aps, std::vector<StationNode> stations, std::vector<Wall> walls)
    : aps_(std::move(aps))
    , stations_(std::move(stations))
    , walls_(std::move(walls))
{
    for (std::size_t i = 0; i < aps_.size(); ++i) {
        ap_index_.try_emplace(to_int(aps_[i].id), i);
    }
    for (std::size_t i = 0; i < stations_.size(); ++i) {
        station_index_.try_emplace(to_int(stations_[i].id), i);
    }
    stations_by_ap_.resize(aps_.size());
    for (const auto& s : stations_) {
        if (auto idx = ap_index(s.ap)) {
            stations_by_ap_[*idx].push_back(s.id);
        }
    }
}

std::optional<std::size_t> Topology::ap_index(ApId id) const
{
    auto it = ap_index_.find(to_int(id));
    if (it == ap_index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<std::size_t> Topology::station_index(StationId id) const
{
    auto it = station_index_.find(to_int(id));
    if (it == station_index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

Position Topology::ap_position(ApId id) const
{
    auto idx = ap_index(id);
    if (!idx) {
        throw std::out_of_range("unknown AP id " + std::to_string(to_int(id)));
    }
    return aps_[*idx].pos;
}

Position Topology::station_position(StationId id) const
{
    auto idx = station_index(id);
    if (!idx) {
        throw std::out_of_range("unknown station id " + std::to_string(to_int(id)));
    }
    return stations_[*idx].pos;
}

ApId Topology::owner(StationId id) const
{
    auto idx = station_index(id);
    if (!idx) {
        throw std::out_of_range("unknown station id " + std::to_string(to_int(id)));
    }
    return stations_[*idx].ap;
}

const std::vector<StationId>& Topology::stations_of(ApId id) const
{
    auto idx = ap_index(id);
    return idx ? stations_by_ap_[*idx] : kNoStations;
}

bool Topology::is_associated(const Pair& p) const
{
    auto idx = station_index(p.station);
    return idx && stations_[*idx].ap == p.ap && ap_index(p.ap).has_value();
}

bool Topology::same_structure(const Topology& other) const
{
    if (aps_.size() != other.aps_.size() || stations_.size() != other.stations_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < aps_.size(); ++i) {
        if (aps_[i].id != other.aps_[i].id || stations_by_ap_[i] != other.stations_by_ap_[i]) {
            return false;
        }
    }
    return true;
}

void Topology::require_valid() const
{
    auto violations = validate(*this);
    if (!violations.empty()) {
        std::string msg = "invalid topology:";
        for (const auto& v : violations) {
            msg += " " + v + ";";
        }
        throw std::invalid_argument(msg);
    }
}

std::vector<std::string> validate(const Topology& topology)
{
    std::vector<std::string> out;
    if (topology.aps().empty()) {
        out.emplace_back("no APs");
    }

    std::set<std::uint32_t> ap_ids;
    for (const auto& ap : topology.aps()) {
        if (!ap_ids.insert(to_int(ap.id)).second) {
            out.push_back("duplicate AP id " + std::to_string(to_int(ap.id)));
        }
        if (!finite(ap.pos)) {
            out.push_back("non-finite position for AP " + std::to_string(to_int(ap.id)));
        }
    }

    std::set<std::uint32_t> station_ids;
    std::set<std::uint32_t> served;
    for (const auto& s : topology.stations()) {
        if (!station_ids.insert(to_int(s.id)).second) {
            out.push_back("duplicate station id " + std::to_string(to_int(s.id)));
        }
        if (!finite(s.pos)) {
            out.push_back("non-finite position for station " + std::to_string(to_int(s.id)));
        }
        if (!ap_ids.contains(to_int(s.ap))) {
            out.push_back("dangling association: station " + std::to_string(to_int(s.id)) +
                          " references missing AP " + std::to_string(to_int(s.ap)));
        } else {
            served.insert(to_int(s.ap));
        }
    }

    for (const auto& ap : topology.aps()) {
        if (!served.contains(to_int(ap.id))) {
            out.push_back("AP without stations: " + std::to_string(to_int(ap.id)));
        }
    }

    for (std::size_t i = 0; i < topology.walls().size(); ++i) {
        const auto& w = topology.walls()[i];
        if (w.a == w.b) {
            out.push_back("degenerate wall " + std::to_string(i));
        }
        if (!finite(w.a) || !finite(w.b)) {
            out.push_back("non-finite wall " + std::to_string(i));
        }
    }
    return out;
}

TransmissionSet::TransmissionSet(std::vector<Pair> pairs)
    : pairs_(std::move(pairs))
{
    if (pairs_.empty()) {
        throw std::invalid_argument("transmission set must not be empty");
    }
    std::sort(pairs_.begin(), pairs_.end());
    auto dup = std::adjacent_find(pairs_.begin(), pairs_.end(),
                                  [](const Pair& a, const Pair& b) { return a.ap == b.ap; });
    if (dup != pairs_.end()) {
        throw std::invalid_argument("transmission set has two pairs for AP " +
                                    std::to_string(to_int(dup->ap)));
    }
}

bool TransmissionSet::contains(const Pair& p) const
{
    return std::binary_search(pairs_.begin(), pairs_.end(), p);
}

bool TransmissionSet::contains_ap(ApId ap) const
{
    return std::any_of(pairs_.begin(), pairs_.end(), [ap](const Pair& p) { return p.ap == ap; });
}

} // namespace csr
