#include "resing/monomial_game.hpp"

#include <algorithm>
#include <deque>

#include "resing/errors.hpp"

namespace resing {

unsigned LogState::sum(const std::set<uint64_t>& b) const {
    unsigned s = 0;
    for (uint64_t id : b) {
        auto it = a.find(id);
        if (it != a.end()) s += it->second;
    }
    return s;
}

bool LogState::is_singular() const { return !log_sing_strata(*this).empty(); }

std::vector<std::set<uint64_t>> log_sing_strata(const LogState& s) {
    std::vector<uint64_t> ids;
    for (const auto& [id, e] : s.a)
        if (e > 0) ids.push_back(id);
    std::vector<std::set<uint64_t>> out;
    const size_t n = ids.size();
    if (n > 30) throw FuelExhausted("log_sing_strata: too many labels");
    for (uint64_t mask = 1; mask < (uint64_t(1) << n); ++mask) {
        std::set<uint64_t> b;
        unsigned total = 0;
        for (size_t i = 0; i < n; ++i)
            if (mask >> i & 1u) {
                b.insert(ids[i]);
                total += s.a.at(ids[i]);
            }
        if (total < s.d) continue;
        // keep only inclusion-minimal sets
        bool minimal = true;
        for (uint64_t id : b) {
            unsigned without = total - s.a.at(id);
            if (without >= s.d) { minimal = false; break; }
        }
        if (minimal) out.push_back(std::move(b));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::set<uint64_t> choose_center(const LogState& s) {
    auto strata = log_sing_strata(s);
    if (strata.empty()) throw Error("choose_center: state is nonsingular");
    const std::set<uint64_t>* best = nullptr;
    for (const auto& b : strata) {
        if (!best) { best = &b; continue; }
        if (b.size() != best->size()) {
            if (b.size() < best->size()) best = &b;
            continue;
        }
        unsigned sb = s.sum(b), sbest = s.sum(*best);
        if (sb != sbest) {
            if (sb > sbest) best = &b;
            continue;
        }
        if (std::lexicographical_compare(b.begin(), b.end(), best->begin(), best->end()))
            best = &b;
    }
    return *best;
}

std::vector<std::pair<uint64_t, LogState>> log_blowup(const LogState& s,
                                                      const std::set<uint64_t>& b,
                                                      uint64_t fresh_id) {
    if (s.sum(b) < s.d) throw Error("log_blowup: center is not a singular stratum");
    std::vector<std::pair<uint64_t, LogState>> out;
    if (b.size() == 1) {
        LogState child = s;
        child.a[*b.begin()] -= s.d;
        out.emplace_back(*b.begin(), std::move(child));
        return out;
    }
    const unsigned fresh_exp = s.sum(b) - s.d;
    for (uint64_t l : b) {
        LogState child;
        child.d = s.d;
        for (const auto& [id, e] : s.a)
            if (id != l) child.a[id] = e;
        child.a[fresh_id] = fresh_exp;
        out.emplace_back(l, std::move(child));
    }
    return out;
}

GameResult monomial_resolve(const LogState& start, unsigned fuel, LabelAllocator& ids) {
    GameResult res;
    std::deque<LogState> leaves{start};
    unsigned steps = 0;
    // Process the first singular leaf each round; nonsingular leaves are
    // retired in order.
    std::vector<LogState> done;
    while (!leaves.empty()) {
        LogState cur = std::move(leaves.front());
        leaves.pop_front();
        if (!cur.is_singular()) {
            done.push_back(std::move(cur));
            continue;
        }
        if (++steps > fuel) throw FuelExhausted("monomial_resolve: fuel exceeded");
        std::set<uint64_t> b = choose_center(cur);
        res.steps.push_back({cur, b});
        uint64_t fresh = b.size() > 1 ? ids.fresh() : 0;
        for (auto& [l, child] : log_blowup(cur, b, fresh)) leaves.push_front(std::move(child));
    }
    res.final_leaves = std::move(done);
    return res;
}

} // namespace resing
