#include "resing/driver.hpp"

#include <algorithm>

namespace resing {

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Base: return "base";
        case Phase::Monomial: return "monomial";
        case Phase::AdjustDescent: return "adjust-descent";
        case Phase::Reduce: return "reduce";
        case Phase::SeparateOld: return "separate-old";
        case Phase::MaxContact: return "max-contact";
    }
    return "?";
}

namespace {

std::vector<Int> int_divisors(const Int& n, unsigned fuel) {
    Int a = abs(n);
    std::vector<Int> out;
    if (a == 0) return out;
    unsigned used = 0;
    for (Int i = 1; i * i <= a; ++i) {
        if (++used > fuel) throw FuelExhausted("rational_roots: divisor search budget exceeded");
        if (a % i == 0) {
            out.push_back(i);
            if (i * i != a) out.push_back(a / i);
        }
    }
    return out;
}

} // namespace

RationalRoots rational_roots(const Poly& f, size_t var, unsigned fuel) {
    RationalRoots out;
    if (f.is_zero()) throw Error("rational_roots of the zero polynomial");
    // coefficient vector in the variable
    unsigned deg = f.degree_in(var);
    std::vector<Rational> c(deg + 1, Rational(0));
    for (const auto& [m, coef] : f.terms()) {
        for (size_t i = 0; i < f.nvars(); ++i)
            if (i != var && m.exps[i] != 0)
                throw Error("rational_roots: polynomial is not univariate");
        c[m.exps[var]] = coef;
    }
    // root 0 with multiplicity
    size_t low = 0;
    while (low < c.size() && c[low] == 0) ++low;
    if (low > 0) {
        out.roots.push_back(0);
        c.erase(c.begin(), c.begin() + static_cast<long>(low));
    }
    // clear denominators and content
    while (c.size() > 1) {
        Int scale = 1;
        for (const auto& q : c) scale = int_lcm(scale, denominator(q));
        std::vector<Int> z;
        for (const auto& q : c) z.push_back(numerator(q) * (scale / denominator(q)));
        bool found = false;
        for (const Int& p : int_divisors(z.front(), fuel)) {
            for (const Int& q : int_divisors(z.back(), fuel)) {
                for (int sign : {1, -1}) {
                    Rational r(p * sign, q);
                    // evaluate by Horner
                    Rational acc = 0;
                    for (size_t i = c.size(); i-- > 0;) acc = acc * r + c[i];
                    if (acc == 0) {
                        out.roots.push_back(r);
                        // synthetic division by (x - r)
                        std::vector<Rational> nc(c.size() - 1, Rational(0));
                        Rational carry = c.back();
                        for (size_t i = c.size() - 1; i-- > 0;) {
                            nc[i] = carry;
                            carry = c[i] + carry * r;
                        }
                        c = std::move(nc);
                        found = true;
                    }
                    if (found) break;
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    std::sort(out.roots.begin(), out.roots.end());
    out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
    out.complete = c.size() <= 1;
    return out;
}

namespace {

Rational delta_along_induced(const IdealisticSpace& s, const CoordSubspace& center) {
    CoordSubspace y = center;
    if (s.subspace)
        for (int v : s.subspace->zeroed) y.zeroed.insert(v);
    return delta_along(s, y);
}

class Run {
public:
    Run(const IdealisticSpace& input, const DriverOptions& opts) : opts_(opts) {
        input.check();
        TreeNode root;
        root.chart = input.chart;
        root.levels.push_back(input);
        nodes_.push_back(std::move(root));
        // Label ids continue above whatever the input chart used.
        for (const auto& [id, idx] : input.chart.divisor) ids_.next = std::max(ids_.next, id + 1);
    }

    ResolveOutcome run() {
        resolve_level(0, 0, 0);
        return finish();
    }

    ResolveOutcome run_replay(const ResolutionTrace& trace) {
        for (const auto& step : trace.steps) replay_step(step);
        return finish();
    }

private:
    DriverOptions opts_;
    std::vector<TreeNode> nodes_;
    ResolutionTrace trace_;
    LabelAllocator ids_;
    unsigned steps_used_ = 0;

    // ---- outcome ----------------------------------------------------

    ResolveOutcome finish() {
        ResolveOutcome out;
        out.resolved = true;
        for (size_t i = 0; i < nodes_.size(); ++i) {
            if (!nodes_[i].is_leaf()) continue;
            LeafVerdict v;
            v.node = static_cast<int>(i);
            const auto& lv = nodes_[i].levels.at(0);
            v.alive = lv.has_value();
            v.sing_empty = !v.alive || sing_is_empty(*lv, opts_.groebner);
            out.resolved = out.resolved && v.sing_empty;
            out.verification.push_back(v);
        }
        out.nodes = std::move(nodes_);
        out.trace = std::move(trace_);
        return out;
    }

    // ---- step application -------------------------------------------

    void spend_step() {
        if (++steps_used_ > opts_.step_fuel)
            throw FuelExhausted("driver: global step budget exceeded");
    }

    void assert_center_legal(int node, const CoordSubspace& center) {
        for (size_t li = 0; li < nodes_[node].levels.size(); ++li) {
            const auto& lv = nodes_[node].levels[li];
            if (!lv) continue;
            if (lv->subspace) {
                bool contains_all = true, meets_any = false;
                for (int v : lv->subspace->zeroed) {
                    if (center.contains(v)) meets_any = true;
                    else contains_all = false;
                }
                if (meets_any && !contains_all)
                    throw InvariantViolation("center partially meets a working subspace");
            }
            if (delta_along_induced(*lv, center) < 1) {
                std::string what = "emitted center is not permissible for level " +
                                   std::to_string(li) + " at node " + std::to_string(node) +
                                   ": center {";
                for (int v : center.zeroed) what += nodes_[node].chart.vars[v] + ",";
                what += "} ideals:";
                for (const auto& mi : lv->ideals)
                    what +=
                        " (" + to_string(mi.f, lv->chart.vars) + "," + std::to_string(mi.d) + ")";
                throw InvariantViolation(what);
            }
        }
    }

    std::vector<int> apply_blowup(int node, const CoordSubspace& center, Phase phase) {
        spend_step();
        assert_center_legal(node, center);
        TraceStep step;
        step.kind = TraceStep::Kind::Blowup;
        step.phase = phase;
        step.node = node;
        for (int v : center.zeroed) step.center.push_back(nodes_[node].chart.vars[v]);

        std::vector<int> children;
        for (auto& [child, map] : blowup_charts(nodes_[node].chart, center, ids_,
                                                static_cast<int>(trace_.steps.size()))) {
            TreeNode tn;
            tn.chart = child;
            tn.parent = node;
            tn.from_parent = map;
            for (const auto& lv : nodes_[node].levels)
                tn.levels.push_back(lv ? controlled_transform(*lv, child, map) : std::nullopt);
            int id = static_cast<int>(nodes_.size());
            nodes_.push_back(std::move(tn));
            nodes_[node].children.push_back(id);
            children.push_back(id);
        }
        step.children = children;
        trace_.steps.push_back(std::move(step));
        return children;
    }

    int apply_identity_division(int node, int var, Phase phase) {
        spend_step();
        assert_center_legal(node, CoordSubspace{{var}});
        TraceStep step;
        step.kind = TraceStep::Kind::IdentityDivision;
        step.phase = phase;
        step.node = node;
        step.center.push_back(nodes_[node].chart.vars[var]);

        auto [child, map] =
            identity_division_chart(nodes_[node].chart, var, ids_, static_cast<int>(trace_.steps.size()));
        TreeNode tn;
        tn.chart = child;
        tn.parent = node;
        tn.from_parent = map;
        for (const auto& lv : nodes_[node].levels)
            tn.levels.push_back(lv ? controlled_transform(*lv, child, map) : std::nullopt);
        int id = static_cast<int>(nodes_.size());
        nodes_.push_back(std::move(tn));
        nodes_[node].children.push_back(id);
        step.children = {id};
        trace_.steps.push_back(std::move(step));
        return id;
    }

    void apply_recoords(int node, const std::vector<Recoord>& rs, Phase phase) {
        if (rs.empty()) return;
        spend_step();
        for (const auto& r : rs) {
            // Keep the node chart in sync with the per-level charts: a
            // moved hyperplane loses its label everywhere.
            if (auto label = nodes_[node].chart.label_on(r.var)) {
                nodes_[node].chart.divisor.erase(*label);
                nodes_[node].chart.labels.erase(*label);
            }
            for (auto& lv : nodes_[node].levels) {
                if (!lv) continue;
                if (lv->zeroed(r.var))
                    throw InvariantViolation("recoordination of a variable zeroed on a level");
                *lv = apply_recoord(*lv, r);
            }
            nodes_[node].recoords.push_back(r);
        }
        TraceStep step;
        step.kind = TraceStep::Kind::Recoordinate;
        step.phase = phase;
        step.node = node;
        step.recoords = rs;
        trace_.steps.push_back(std::move(step));
    }

    // ---- tree queries ------------------------------------------------

    void leaves_below(int node, std::vector<int>& out) const {
        if (nodes_[node].is_leaf()) {
            out.push_back(node);
            return;
        }
        for (int c : nodes_[node].children) leaves_below(c, out);
    }

    void subtree(int node, std::vector<int>& out) const {
        out.push_back(node);
        for (int c : nodes_[node].children) subtree(c, out);
    }

    // ---- level-stack plumbing -----------------------------------------

    void push_level(int node, IdealisticSpace space) {
        if (!nodes_[node].is_leaf()) throw InvariantViolation("push_level on an inner node");
        nodes_[node].levels.push_back(std::move(space));
    }

    void pop_level(int node, size_t expect) {
        std::vector<int> all;
        subtree(node, all);
        for (int n : all) {
            if (nodes_[n].levels.size() == expect + 1) nodes_[n].levels.pop_back();
            if (nodes_[n].levels.size() != expect)
                throw InvariantViolation("level stack out of shape");
        }
    }

    // ---- the induction -------------------------------------------------

    void resolve_level(int root, size_t level, unsigned depth) {
        if (depth > opts_.max_depth) throw FuelExhausted("driver: level recursion too deep");
        for (unsigned round = 0; round < opts_.round_fuel; ++round) {
            std::vector<int> ls;
            leaves_below(root, ls);
            int target = -1;
            for (int leaf : ls) {
                const auto& lv = nodes_[leaf].levels.at(level);
                if (!lv) continue;
                if (!sing_is_empty(*lv, opts_.groebner)) { target = leaf; break; }
            }
            if (target < 0) return;
            act(target, level, depth);
        }
        throw FuelExhausted("driver: round budget exceeded");
    }

    void act(int leaf, size_t level, unsigned depth) {
        if (nodes_[leaf].levels.size() != level + 1)
            throw InvariantViolation("acting above a live deeper level");
        const IdealisticSpace& s = *nodes_[leaf].levels[level];
        const size_t e = s.dim();
        if (e == 0) throw InvariantViolation("zero-dimensional working space");
        if (e == 1) { base_step(leaf, level); return; }

        IdealisticSpace sn = normalize(s);
        unsigned d = 0;
        for (const auto& mi : sn.ideals)
            if (!mi.f.is_zero()) { d = mi.d; break; }
        LogFactor z = extract_log_factor(sn);
        auto mu = cofactorial_order(sn, z, opts_.groebner);
        if (!mu) throw InvariantViolation("singular leaf with empty co-factorial locus");
        if (*mu == 0) { monomial_phase(leaf, level, z, d); return; }

        const bool adjusted = is_adjusted(s, opts_.groebner);
        const int sing_dim = dimension(singular_locus_in_chart(s), opts_.groebner);
        if (sing_dim == static_cast<int>(e) - 1) {
            if (try_reduce_step(leaf, level)) return;
            if (adjusted)
                throw UnsupportedInput(
                    "reduce: codimension-one singular component is not rectifiable");
        }
        if (!adjusted) { adjust_round(leaf, level, sn, z, *mu, depth); return; }
        if (separate_divisor_step(leaf, level, depth)) return;
        descend(leaf, level, depth);
    }

    // Dimension-one base case: blow up rational singular points.
    void base_step(int leaf, size_t level) {
        const IdealisticSpace& s = *nodes_[leaf].levels[level];
        int tvar = s.space_vars().at(0);

        IdealBasis sing = singular_ideal(s);
        GroebnerBasis gb = groebner(sing, opts_.groebner);
        if (gb.contains_one() || gb.elems.empty())
            throw InvariantViolation("base_step on a nonsingular space");
        RationalRoots rr = rational_roots(gb.elems.front(), static_cast<size_t>(tvar),
                                          opts_.root_search_fuel);
        if (!rr.complete)
            throw UnsupportedInput("base case: non-rational singular point");
        if (rr.roots.empty()) throw InvariantViolation("base_step found no singular point");

        Rational r = rr.roots.front();
        if (r != 0) {
            apply_recoords(leaf, {Recoord{tvar, Poly::constant(s.nvars(), r)}}, Phase::Base);
        }
        CoordSubspace center;
        if (s.subspace) center = *s.subspace;
        center.zeroed.insert(tvar);
        if (center.size() == 1) {
            apply_identity_division(leaf, tvar, Phase::Base);
        } else {
            apply_blowup(leaf, center, Phase::Base);
        }
    }

    // Combinatorial phase: the space is equivalent to its logarithmic
    // factor; play the exponent game and replay its centers. The game's
    // stratum E_B is cut down to the working subspace: the tree center
    // is V(B) meet N, which the maximal-contact chain keeps permissible
    // for every live level.
    void monomial_phase(int leaf, size_t level, const LogFactor& z, unsigned d) {
        struct Pair {
            int node;
            LogState st;
        };
        LogState st0;
        st0.d = d;
        st0.a = z.exps;
        std::deque<Pair> work{{leaf, st0}};
        unsigned fuel = opts_.monomial_fuel;
        while (!work.empty()) {
            Pair cur = work.front();
            work.pop_front();
            if (!cur.st.is_singular()) continue;
            if (fuel-- == 0) throw FuelExhausted("monomial phase: game budget exceeded");
            std::set<uint64_t> b = choose_center(cur.st);
            // apply_blowup reallocates the node vector; keep a copy
            const Chart chart = nodes_[cur.node].chart;
            const auto& space = nodes_[cur.node].levels.at(level);
            if (!space) throw InvariantViolation("monomial phase: dead working space");
            CoordSubspace center;
            if (space->subspace) center = *space->subspace;
            std::set<int> bvars;
            for (uint64_t id : b) {
                int v = chart.divisor.at(id);
                center.zeroed.insert(v);
                bvars.insert(v);
            }
            if (center.size() == 1) {
                int child = apply_identity_division(cur.node, *center.zeroed.begin(),
                                                    Phase::Monomial);
                auto kids = log_blowup(cur.st, b, 0);
                work.push_front({child, kids[0].second});
                continue;
            }
            std::vector<int> children = apply_blowup(cur.node, center, Phase::Monomial);
            uint64_t fresh = 0;
            for (int child : children) {
                int evar = nodes_[child].from_parent->exceptional->second;
                if (bvars.count(evar)) fresh = *nodes_[child].chart.label_on(evar);
            }
            std::vector<std::pair<uint64_t, LogState>> kids;
            if (b.size() == 1) {
                // Realized as a genuine blow-up (the center is a point
                // or stratum of N): the old label is dropped in its own
                // chart and the fresh exceptional carries a - d.
                uint64_t b0 = *b.begin();
                LogState child;
                child.d = cur.st.d;
                for (const auto& [id, e] : cur.st.a)
                    if (id != b0) child.a[id] = e;
                child.a[fresh] = cur.st.a.at(b0) - cur.st.d;
                kids.emplace_back(b0, std::move(child));
            } else {
                kids = log_blowup(cur.st, b, fresh);
            }
            for (int child : children) {
                int evar = nodes_[child].from_parent->exceptional->second;
                if (!bvars.count(evar)) continue; // the working space died here
                uint64_t lkey = 0;
                for (uint64_t id : b)
                    if (chart.divisor.at(id) == evar) lkey = id;
                const LogState* predicted = nullptr;
                for (const auto& [l, stc] : kids)
                    if (l == lkey) predicted = &stc;
                if (!predicted) throw InvariantViolation("monomial phase: chart mismatch");
                work.push_back({child, *predicted});
            }
        }
        // Equivalence with the logarithmic space promises an empty
        // singular locus now; verify it.
        std::vector<int> ls;
        leaves_below(leaf, ls);
        for (int n : ls) {
            const auto& lv = nodes_[n].levels.at(level);
            if (lv && !sing_is_empty(*lv, opts_.groebner))
                throw InvariantViolation("monomial phase left a singular leaf");
        }
    }

    // One codimension-one division: a coordinate hyperplane of generic
    // order >= 1, found directly or after rectifying a perfect-power
    // component equation.
    bool try_reduce_step(int leaf, size_t level) {
        const IdealisticSpace& s = *nodes_[leaf].levels[level];
        for (int v : s.space_vars()) {
            CoordSubspace y;
            if (s.subspace) y = *s.subspace;
            y.zeroed.insert(v);
            if (delta_along(s, y) >= 1) {
                if (y.size() == 1) apply_identity_division(leaf, v, Phase::Reduce);
                else apply_blowup(leaf, y, Phase::Reduce);
                return true;
            }
        }
        // Rectification: some f_j is a d_j-th power of a section linear
        // in a non-divisor variable (the generator itself when d_j = 1).
        const std::set<int> dvars = s.divisor_vars();
        for (const auto& mi : s.ideals) {
            if (mi.f.is_zero()) continue;
            auto root = nth_root(mi.f, mi.d);
            if (!root) continue;
            for (int v : s.space_vars()) {
                if (dvars.count(v)) continue;
                if (root->degree_in(static_cast<size_t>(v)) != 1) continue;
                Poly lead = root->coefficient_of(static_cast<size_t>(v), 1);
                if (!lead.is_constant() || lead.is_zero()) continue;
                Poly rest = root->coefficient_of(static_cast<size_t>(v), 0);
                if (rest.is_zero()) continue; // already a coordinate hyperplane
                Recoord r{v, rest * (Rational(-1) / lead.leading_coefficient())};
                IdealisticSpace probe = apply_recoord(s, r);
                CoordSubspace y;
                if (probe.subspace) y = *probe.subspace;
                y.zeroed.insert(v);
                if (delta_along(probe, y) < 1) continue;
                apply_recoords(leaf, {r}, Phase::Reduce);
                if (y.size() == 1) apply_identity_division(leaf, v, Phase::Reduce);
                else apply_blowup(leaf, y, Phase::Reduce);
                return true;
            }
        }
        return false;
    }

    // Adjust by the maximal logarithmic factor, resolve the adjusted
    // extension, then continue on the transform; the co-factorial order
    // strictly drops each round.
    void adjust_round(int leaf, size_t level, const IdealisticSpace& sn, const LogFactor& z,
                      unsigned mu, unsigned depth) {
        IdealisticSpace ext = adjust(sn, z, mu, opts_.groebner);
        const size_t steps_before = trace_.steps.size();
        push_level(leaf, std::move(ext));
        resolve_level(leaf, level + 1, depth + 1);
        pop_level(leaf, level + 1);

        // The co-factorial order strictly drops under the transported
        // factor. A recoordination moves a hyperplane out of coordinate
        // form, the transported factor stops being a divisor monomial,
        // and the recomputed maximal factor may account for less; the
        // descent law is only checkable when the round stayed
        // coordinate.
        bool recoordinated = false;
        for (size_t i = steps_before; i < trace_.steps.size(); ++i)
            recoordinated |= trace_.steps[i].kind == TraceStep::Kind::Recoordinate;
        if (recoordinated) return;

        std::vector<int> ls;
        leaves_below(leaf, ls);
        for (int n : ls) {
            const auto& lv = nodes_[n].levels.at(level);
            if (!lv || sing_is_empty(*lv, opts_.groebner)) continue;
            IdealisticSpace nn = normalize(*lv);
            LogFactor zz = extract_log_factor(nn);
            auto mu2 = cofactorial_order(nn, zz, opts_.groebner);
            if (mu2 && *mu2 >= mu)
                throw InvariantViolation("co-factorial order did not decrease at node " +
                                         std::to_string(n));
        }
    }

    // Project over one divisor component meeting the singular locus and
    // resolve the projection; afterwards the component's strict
    // transform avoids the singular locus. Every component present at
    // this leaf counts as old: separating all of them puts the later
    // maximal-contact construction in an empty-divisor neighbourhood.
    bool separate_divisor_step(int leaf, size_t level, unsigned depth) {
        const IdealisticSpace& s = *nodes_[leaf].levels[level];
        for (uint64_t f : s.divisor_labels()) {
            auto it = s.chart.divisor.find(f);
            if (it == s.chart.divisor.end()) continue;
            int fvar = it->second;
            IdealBasis meet = singular_locus_in_chart(s);
            meet.add(Poly::variable(s.nvars(), static_cast<size_t>(fvar)));
            if (is_empty_variety(meet, opts_.groebner)) continue;

            ProjectedSpace proj = coefficient_ideals({s, fvar, f}, opts_.groebner);
            push_level(leaf, std::move(proj.space));
            resolve_level(leaf, level + 1, depth + 1);
            pop_level(leaf, level + 1);

            std::vector<int> ls;
            leaves_below(leaf, ls);
            for (int n : ls) {
                const auto& lv = nodes_[n].levels.at(level);
                if (!lv) continue;
                auto jt = lv->chart.divisor.find(f);
                if (jt == lv->chart.divisor.end()) continue;
                IdealBasis check = singular_locus_in_chart(*lv);
                check.add(Poly::variable(lv->nvars(), static_cast<size_t>(jt->second)));
                if (!is_empty_variety(check, opts_.groebner))
                    throw InvariantViolation("separation left the old component singular");
            }
            return true;
        }
        return false;
    }

    // Maximal-contact descent: rectify a hypersurface at a working
    // point, project the coefficients onto it, resolve one dimension
    // down; equivalence empties the singular locus upstairs.
    void descend(int leaf, size_t level, unsigned depth) {
        const IdealisticSpace& s = *nodes_[leaf].levels[level];
        RationalPoint p = find_working_point(s);
        MaxContact mc = maximal_contact_chart(s, p, opts_.shear_ladder);
        apply_recoords(leaf, mc.recoords, Phase::MaxContact);
        const IdealisticSpace& cur = *nodes_[leaf].levels[level];
        if (cur.ideals.size() != mc.ctx.source.ideals.size())
            throw InvariantViolation("descend: recoordination mismatch");
        ProjectedSpace proj = coefficient_ideals({cur, mc.ctx.zvar, std::nullopt}, opts_.groebner);
        push_level(leaf, std::move(proj.space));
        resolve_level(leaf, level + 1, depth + 1);
        pop_level(leaf, level + 1);
    }

    RationalPoint find_working_point(const IdealisticSpace& s) {
        RationalPoint origin{std::vector<Rational>(s.nvars(), Rational(0))};
        auto singular_at = [&](const RationalPoint& p) {
            for (size_t i = 0; i < s.nvars(); ++i)
                if (s.zeroed(static_cast<int>(i)) && p.coords[i] != 0) return false;
            return delta(s, p) >= 1;
        };
        if (singular_at(origin)) return origin;
        for (const auto& seed : opts_.seeds)
            if (seed.nvars() == s.nvars() && singular_at(seed)) return seed;
        // Axis probing: restrict the singular ideal to one axis at a
        // time and take rational roots.
        IdealBasis sing = singular_ideal(s);
        for (int v : s.space_vars()) {
            std::vector<Poly> images;
            for (size_t i = 0; i < s.nvars(); ++i)
                images.push_back(static_cast<int>(i) == v ? Poly::variable(s.nvars(), i)
                                                          : Poly::zero(s.nvars()));
            IdealBasis axis;
            axis.nvars = s.nvars();
            for (const auto& g : sing.gens) axis.add(g.substitute(images, s.nvars()));
            if (axis.gens.empty()) continue; // whole axis; origin was already rejected
            GroebnerBasis gb = groebner(axis, opts_.groebner);
            if (gb.contains_one() || gb.elems.empty()) continue;
            RationalRoots rr =
                rational_roots(gb.elems.front(), static_cast<size_t>(v), opts_.root_search_fuel);
            for (const auto& r : rr.roots) {
                RationalPoint p = origin;
                p.coords[static_cast<size_t>(v)] = r;
                if (singular_at(p)) return p;
            }
        }
        throw UnsupportedInput("no rational working point found on the singular locus");
    }

    // ---- replay -------------------------------------------------------

    void replay_step(const TraceStep& step) {
        if (step.node < 0 || static_cast<size_t>(step.node) >= nodes_.size())
            throw InvariantViolation("replay: step names a missing node");
        switch (step.kind) {
            case TraceStep::Kind::Recoordinate: {
                apply_recoords(step.node, step.recoords, step.phase);
                trace_.steps.back().node = step.node;
                break;
            }
            case TraceStep::Kind::IdentityDivision: {
                int var = nodes_[step.node].chart.var_index(step.center.at(0));
                if (var < 0) throw InvariantViolation("replay: unknown center variable");
                int child = apply_identity_division(step.node, var, step.phase);
                if (step.children.size() != 1 || step.children[0] != child)
                    throw InvariantViolation("replay: tree shape diverged");
                break;
            }
            case TraceStep::Kind::Blowup: {
                CoordSubspace center;
                for (const auto& name : step.center) {
                    int var = nodes_[step.node].chart.var_index(name);
                    if (var < 0) throw InvariantViolation("replay: unknown center variable");
                    center.zeroed.insert(var);
                }
                std::vector<int> children = apply_blowup(step.node, center, step.phase);
                if (children != step.children)
                    throw InvariantViolation("replay: tree shape diverged");
                break;
            }
        }
    }
};

} // namespace

ResolveOutcome redsing(const IdealisticSpace& input, const DriverOptions& opts) {
    Run run(input, opts);
    return run.run();
}

ResolveOutcome replay(const IdealisticSpace& input, const ResolutionTrace& trace,
                      const DriverOptions& opts) {
    Run run(input, opts);
    return run.run_replay(trace);
}

} // namespace resing
