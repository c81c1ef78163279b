#include "pardensur/evo/ea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "pardensur/moo/nondominated.hpp"

namespace pardensur::evo {

namespace {

std::vector<moo::ObjectivePoint> objectives_of(std::span<const Individual> inds) {
    std::vector<moo::ObjectivePoint> out;
    out.reserve(inds.size());
    for (const auto& ind : inds) {
        if (!ind.objectives)
            throw std::invalid_argument("ea: individual without objectives in survival pool");
        out.push_back(*ind.objectives);
    }
    return out;
}

std::vector<std::vector<std::size_t>> group_fronts(const std::vector<int>& ranks) {
    int max_rank = 0;
    for (int r : ranks) max_rank = std::max(max_rank, r);
    std::vector<std::vector<std::size_t>> fronts(static_cast<std::size_t>(max_rank) + 1);
    for (std::size_t i = 0; i < ranks.size(); ++i)
        fronts[static_cast<std::size_t>(ranks[i])].push_back(i);
    return fronts;
}

// Min-max bounds of a point set in minimization form.
struct Bounds {
    std::array<double, 2> lo{std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity()};
    std::array<double, 2> hi{-std::numeric_limits<double>::infinity(),
                             -std::numeric_limits<double>::infinity()};
    void absorb(const moo::ObjectivePoint& p) {
        const auto f = p.min_form();
        for (int k = 0; k < 2; ++k) {
            lo[k] = std::min(lo[k], f[k]);
            hi[k] = std::max(hi[k], f[k]);
        }
    }
    std::array<double, 2> normalize(const moo::ObjectivePoint& p) const {
        const auto f = p.min_form();
        std::array<double, 2> out{};
        for (int k = 0; k < 2; ++k) {
            const double range = hi[k] - lo[k];
            out[k] = range > 0.0 ? (f[k] - lo[k]) / range : 0.0;
        }
        return out;
    }
};

double norm_dist(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    const double d0 = a[0] - b[0], d1 = a[1] - b[1];
    return std::sqrt(d0 * d0 + d1 * d1);
}

std::vector<Individual> nsga2_survival(std::span<const Individual> merged, std::size_t mu) {
    const auto objs = objectives_of(merged);
    const auto ranks = moo::nondominated_sort(objs);
    const auto fronts = group_fronts(ranks);
    std::vector<Individual> survivors;
    survivors.reserve(std::min(mu, merged.size()));
    for (std::size_t f = 0; f < fronts.size() && survivors.size() < mu; ++f) {
        const auto& front = fronts[f];
        std::vector<moo::ObjectivePoint> front_objs;
        front_objs.reserve(front.size());
        for (std::size_t i : front) front_objs.push_back(objs[i]);
        const auto crowd = moo::crowding_distance(front_objs);
        std::vector<std::size_t> order(front.size());
        for (std::size_t k = 0; k < front.size(); ++k) order[k] = k;
        if (survivors.size() + front.size() > mu) {
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return crowd[a] > crowd[b]; });
        }
        for (std::size_t k : order) {
            if (survivors.size() == mu) break;
            Individual ind = merged[front[k]];
            ind.rank = static_cast<int>(f);
            ind.crowding = crowd[k];
            survivors.push_back(std::move(ind));
        }
    }
    return survivors;
}

}  // namespace

EAState EAState::make(Engine engine, std::size_t mu, std::size_t lambda, std::size_t gene_dim,
                      std::uint64_t seed, VariationConfig variation) {
    EAState s;
    s.engine = engine;
    s.mu = mu;
    s.lambda = lambda;
    s.gene_dim = gene_dim;
    s.variation = variation;
    s.rng = Rng(seed);
    return s;
}

const Individual& tournament_select(std::span<const Individual> pool, Rng& rng) {
    if (pool.empty()) throw std::invalid_argument("tournament_select: empty pool");
    const auto& a = pool[rng.below(pool.size())];
    const auto& b = pool[rng.below(pool.size())];
    if (!a.rank || !a.crowding || !b.rank || !b.crowding)
        throw std::invalid_argument("tournament_select: rank/crowding not populated");
    if (*a.rank != *b.rank) return *a.rank < *b.rank ? a : b;
    if (*a.crowding != *b.crowding) return *a.crowding > *b.crowding ? a : b;
    return rng.uniform01() < 0.5 ? a : b;
}

std::vector<Candidate> infill(EAState& state, std::size_t m) {
    if (m < 1) throw std::invalid_argument("infill: m must be >= 1");
    if (state.population.empty()) return lhs_init(m, state.gene_dim, state.rng);

    std::unordered_set<std::uint64_t> pop_ids;
    for (const auto& ind : state.population) pop_ids.insert(ind.candidate.identity());

    std::vector<Candidate> batch;
    batch.reserve(m);
    std::size_t redraws = 0;
    const std::size_t redraw_cap = 10 * m;
    while (batch.size() < m) {
        const auto& pa = tournament_select(state.population, state.rng);
        const auto& pb = tournament_select(state.population, state.rng);
        auto [c1, c2] =
            uniform_crossover(pa.candidate, pb.candidate, state.variation.crossover_rate, state.rng);
        for (Candidate* c : {&c1, &c2}) {
            if (batch.size() == m) break;
            Candidate mutated =
                polynomial_mutation(*c, state.variation.mutation_rate, state.variation.eta, state.rng);
            if (redraws < redraw_cap && pop_ids.contains(mutated.identity())) {
                ++redraws;
                continue;
            }
            batch.push_back(std::move(mutated));
        }
    }
    return batch;
}

std::vector<Individual> rnsga2_survival(std::span<const Individual> merged, std::size_t mu,
                                        std::span<const moo::ObjectivePoint> ref_points,
                                        double epsilon) {
    if (ref_points.empty()) throw std::invalid_argument("rnsga2_survival: no reference points");
    const auto objs = objectives_of(merged);
    const auto ranks = moo::nondominated_sort(objs);
    const auto fronts = group_fronts(ranks);

    Bounds bounds;
    for (const auto& o : objs) bounds.absorb(o);
    std::vector<std::array<double, 2>> norm(objs.size());
    for (std::size_t i = 0; i < objs.size(); ++i) norm[i] = bounds.normalize(objs[i]);
    std::vector<std::array<double, 2>> refs(ref_points.size());
    for (std::size_t j = 0; j < ref_points.size(); ++j) refs[j] = bounds.normalize(ref_points[j]);

    std::vector<Individual> survivors;
    survivors.reserve(std::min(mu, merged.size()));
    for (std::size_t f = 0; f < fronts.size() && survivors.size() < mu; ++f) {
        const auto& front = fronts[f];
        const std::size_t nf = front.size();

        // Per reference point: front members ordered by normalized distance.
        std::vector<std::vector<std::size_t>> order(refs.size(), std::vector<std::size_t>(nf));
        std::vector<std::size_t> best_rank(nf, nf);
        for (std::size_t j = 0; j < refs.size(); ++j) {
            auto& ord = order[j];
            for (std::size_t k = 0; k < nf; ++k) ord[k] = k;
            std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
                return norm_dist(norm[front[a]], refs[j]) < norm_dist(norm[front[b]], refs[j]);
            });
            for (std::size_t pos = 0; pos < nf; ++pos)
                best_rank[ord[pos]] = std::min(best_rank[ord[pos]], pos + 1);
        }
        auto annotate = [&](std::size_t k) {
            Individual ind = merged[front[k]];
            ind.rank = static_cast<int>(f);
            ind.crowding = -static_cast<double>(best_rank[k]);
            return ind;
        };

        if (survivors.size() + nf <= mu) {
            for (std::size_t k = 0; k < nf; ++k) survivors.push_back(annotate(k));
            continue;
        }

        const std::size_t slots = mu - survivors.size();
        std::vector<bool> taken(nf, false), cleared(nf, false);
        std::size_t selected = 0;
        // Rounds: each reference point picks its closest available point; the
        // epsilon neighborhoods of the round's picks are then cleared.
        while (selected < slots) {
            std::vector<std::size_t> round_picks;
            for (std::size_t j = 0; j < refs.size() && selected < slots; ++j) {
                for (std::size_t k : order[j]) {
                    if (taken[k] || cleared[k]) continue;
                    taken[k] = true;
                    survivors.push_back(annotate(k));
                    round_picks.push_back(k);
                    ++selected;
                    break;
                }
            }
            if (round_picks.empty()) break;
            for (std::size_t p : round_picks)
                for (std::size_t k = 0; k < nf; ++k)
                    if (!taken[k] && norm_dist(norm[front[p]], norm[front[k]]) < epsilon)
                        cleared[k] = true;
        }
        // Fallback: remaining slots come from cleared points, same ordering.
        while (selected < slots) {
            bool progressed = false;
            for (std::size_t j = 0; j < refs.size() && selected < slots; ++j) {
                for (std::size_t k : order[j]) {
                    if (taken[k]) continue;
                    taken[k] = true;
                    survivors.push_back(annotate(k));
                    ++selected;
                    progressed = true;
                    break;
                }
            }
            if (!progressed) break;
        }
        break;
    }
    return survivors;
}

void advance(EAState& state, std::span<const Individual> evaluated) {
    std::vector<Individual> merged = state.population;
    for (const auto& ind : evaluated) {
        if (!ind.objectives)
            throw std::invalid_argument("advance: evaluated individual without objectives");
        merged.push_back(ind);
    }
    if (!merged.empty()) {
        if (state.engine == Engine::nsga2) {
            state.population = nsga2_survival(merged, state.mu);
        } else {
            std::vector<moo::ObjectivePoint> refs(state.reference_points.begin(),
                                                  state.reference_points.end());
            if (refs.empty()) {
                // Single-objective ideal corners of the merged set.
                Bounds b;
                for (const auto& ind : merged) b.absorb(*ind.objectives);
                refs.push_back({b.lo[0], -b.hi[1]});  // best risk, worst return
                refs.push_back({b.hi[0], -b.lo[1]});  // worst risk, best return
            }
            state.population = rnsga2_survival(merged, state.mu, refs, state.epsilon);
        }
    }
    ++state.generation;
}

}  // namespace pardensur::evo
