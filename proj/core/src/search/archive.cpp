#include "pardensur/search/archive.hpp"

#include "pardensur/moo/nondominated.hpp"

namespace pardensur::search {

std::optional<moo::ObjectivePoint> GroundTruthArchive::lookup(std::uint64_t identity) const {
    auto it = index_.find(identity);
    if (it == index_.end()) return std::nullopt;
    return log_[it->second].objectives;
}

bool GroundTruthArchive::insert(evo::Candidate candidate, moo::ObjectivePoint objectives) {
    moo::require_finite(objectives, "GroundTruthArchive::insert");
    const auto id = candidate.identity();
    if (index_.contains(id)) return false;
    index_.emplace(id, log_.size());
    log_.push_back({std::move(candidate), objectives});
    return true;
}

moo::FrontierSet GroundTruthArchive::pareto() const {
    moo::FrontierSet points;
    points.reserve(log_.size());
    for (const auto& e : log_) points.push_back(e.objectives);
    moo::FrontierSet front;
    for (std::size_t i : moo::nondominated_filter(points)) front.push_back(points[i]);
    return front;
}

std::vector<GroundTruthArchive::Entry> GroundTruthArchive::pareto_entries() const {
    moo::FrontierSet points;
    points.reserve(log_.size());
    for (const auto& e : log_) points.push_back(e.objectives);
    std::vector<Entry> out;
    for (std::size_t i : moo::nondominated_filter(points)) out.push_back(log_[i]);
    return out;
}

surrogate::Dataset GroundTruthArchive::dataset() const {
    surrogate::Dataset data;
    for (const auto& e : log_) data.add(e.candidate, e.objectives);
    return data;
}

}  // namespace pardensur::search
