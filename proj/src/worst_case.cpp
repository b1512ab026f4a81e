// Copyright 2026 The reinsure Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "reinsure/worst_case.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "reinsure/errors.hpp"
#include "reinsure/kernels.hpp"
#include "reinsure/parallel.hpp"
#include "reinsure/search.hpp"

namespace reinsure {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct GridBest {
    double value = kInfinity;
    std::vector<std::size_t> steps;
};

// Lexicographic enumeration of compositions j_1 + ... + j_n = total.
void enumerate_compositions(const std::vector<std::vector<double>>& tables, std::size_t total,
                            std::vector<std::size_t>& cur, double partial, GridBest& best) {
    const std::size_t i = cur.size();
    const std::size_t n = tables.size();
    const std::size_t used = std::accumulate(cur.begin(), cur.end(), std::size_t{0});
    if (i + 1 == n) {
        const std::size_t j = total - used;
        const double v = partial + tables[i][j];
        if (v < best.value && !ties_with(v, best.value)) {
            best.value = v;
            best.steps = cur;
            best.steps.push_back(j);
        }
        return;
    }
    for (std::size_t j = 0; j + used <= total; ++j) {
        const double t = tables[i][j];
        if (std::isinf(t)) continue;
        cur.push_back(j);
        enumerate_compositions(tables, total, cur, partial + t, best);
        cur.pop_back();
    }
}

std::size_t compositions(std::size_t steps, std::size_t parts) {
    // C(steps + parts - 1, parts - 1), saturating
    double c = 1.0;
    for (std::size_t k = 1; k < parts; ++k) c = c * static_cast<double>(steps + k) / static_cast<double>(k);
    return c > 1e18 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(c + 0.5);
}

}  // namespace

void SimplexPoint::validate(double tol) const {
    if (gamma.size() < 2) throw DomainError("simplex point: need gamma_0 and at least one gamma_i");
    double s = 0.0;
    for (double g : gamma) {
        if (!(g >= 0.0)) throw DomainError("simplex point: negative component");
        s += g;
    }
    if (std::abs(s - total) > tol) throw DomainError("simplex point: components do not sum to the total");
    if (gamma[0] < floor - tol) throw DomainError("simplex point: gamma_0 below its floor");
}

double simplex_term(const Distribution& d, double gamma_i, double gamma_0) {
    try {
        if (gamma_0 <= 0.0) return d.quantile(std::clamp(1.0 - gamma_i, std::numeric_limits<double>::min(), 1.0));
        return rvar(d, RiskLevels{gamma_i, gamma_0});
    } catch (const DivergenceError&) {
        return kInfinity;
    }
}

BoundResult minimize_over_simplex(std::size_t n, double total, double floor, const WindowTerm& term,
                                  const SimplexSearchConfig& cfg) {
    if (n == 0) throw DomainError("simplex search: no components");
    if (!(total > 0.0 && total <= 1.0) || !(floor >= 0.0) || floor > total) {
        throw DomainError("simplex search: need 0 <= floor <= total <= 1, total > 0");
    }
    const std::size_t p0 = floor < total ? static_cast<std::size_t>(std::max(cfg.gamma0_points, 2)) : 1;
    std::size_t steps = static_cast<std::size_t>(std::max(cfg.simplex_steps, 1));
    while (steps > 4 && compositions(steps, n) > 40000) steps /= 2;

    auto gamma0_at = [&](std::size_t k) {
        if (p0 == 1) return total;
        return k + 1 == p0 ? total : floor + (total - floor) * static_cast<double>(k) / static_cast<double>(p0 - 1);
    };

    std::vector<GridBest> per(p0);
    parallel_for(p0, cfg.workers, [&](std::size_t k) {
        const double g0 = gamma0_at(k);
        const double rest = std::max(total - g0, 0.0);
        std::vector<std::vector<double>> tables(n, std::vector<double>(steps + 1));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= steps; ++j) {
                const double gi = j == steps ? rest : rest * static_cast<double>(j) / static_cast<double>(steps);
                tables[i][j] = term(i, gi, g0);
            }
        }
        GridBest best;
        if (n == 1) {
            best.value = tables[0][steps];
            best.steps = {steps};
        } else if (n == 2) {
            std::vector<double> rev(tables[1].rbegin(), tables[1].rend());
            std::vector<double> sums(steps + 1);
            for (std::size_t j = 0; j <= steps; ++j) sums[j] = tables[0][j] + rev[j];
            const std::size_t j = first_min_index(sums);
            best.value = sums[j];
            best.steps = {j, steps - j};
        } else {
            std::vector<std::size_t> cur;
            enumerate_compositions(tables, steps, cur, 0.0, best);
        }
        per[k] = best;
    });

    std::size_t kbest = 0;
    for (std::size_t k = 1; k < p0; ++k) {
        if (per[k].value < per[kbest].value && !ties_with(per[k].value, per[kbest].value)) kbest = k;
    }
    if (!std::isfinite(per[kbest].value)) throw DivergenceError("simplex search: every grid point diverges");

    std::vector<double> c(n + 1);
    c[0] = gamma0_at(kbest);
    const double rest = std::max(total - c[0], 0.0);
    double assigned = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        c[i + 1] = rest * static_cast<double>(per[kbest].steps[i]) / static_cast<double>(steps);
        assigned += c[i + 1];
    }
    // absorb rounding into the largest coordinate
    {
        auto it = std::max_element(c.begin() + 1, c.end());
        *it = std::max(0.0, *it + (rest - assigned));
    }

    auto eval = [&](const std::vector<double>& g) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += term(i, g[i + 1], g[0]);
            if (std::isinf(s)) break;
        }
        return s;
    };

    double value = eval(c);
    double delta = std::max(p0 > 1 ? (total - floor) / static_cast<double>(p0 - 1) : 0.0,
                            rest / static_cast<double>(steps));
    if (!(delta > 0.0)) delta = total / static_cast<double>(steps);
    for (int round = 0; round < cfg.descent_rounds; ++round) {
        for (int pass = 0; pass < 100; ++pass) {
            bool improved = false;
            for (std::size_t p = 0; p <= n; ++p) {
                for (std::size_t q = 0; q <= n; ++q) {
                    if (p == q) continue;
                    const double lower = p == 0 ? floor : 0.0;
                    const double amount = std::min(delta, c[p] - lower);
                    if (!(amount > 0.0)) continue;
                    std::vector<double> trial = c;
                    trial[p] -= amount;
                    trial[q] += amount;
                    if (p == 0 && trial[0] < floor) trial[0] = floor;
                    const double v = eval(trial);
                    if (v < value && !ties_with(v, value)) {
                        value = v;
                        c = std::move(trial);
                        improved = true;
                    }
                }
            }
            if (!improved) break;
        }
        delta *= cfg.shrink;
    }

    BoundResult out;
    out.value = value;
    out.witness = SimplexPoint{c, total, floor};
    return out;
}

BoundResult simplex_rvar_bound(std::span<const Distribution> marginals, double beta, double alpha,
                               const SimplexSearchConfig& cfg) {
    RiskLevels{beta, alpha}.validate();
    if (!(alpha > 0.0)) throw DomainError("simplex_rvar_bound: alpha must be positive");
    std::vector<Distribution> ds(marginals.begin(), marginals.end());
    BoundResult r = minimize_over_simplex(
        ds.size(), beta + alpha, alpha,
        [&ds](std::size_t i, double gi, double g0) { return simplex_term(ds[i], gi, g0); }, cfg);
    const double level = std::clamp(1.0 - beta - alpha, 1e-12, 1.0 - 1e-12);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (!tail_shape(ds[i], level).concave_beyond) {
            r.assumption_met = false;
            r.warnings.push_back("assumption unmet: marginal " + std::to_string(i + 1) +
                                 " is not concave beyond its quantile; value is an upper bound only");
        }
    }
    return r;
}

BoundResult simplex_var_bound(std::span<const Distribution> marginals, double alpha,
                              const SimplexSearchConfig& cfg) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("simplex_var_bound: alpha outside (0,1)");
    std::vector<Distribution> ds(marginals.begin(), marginals.end());
    BoundResult r = minimize_over_simplex(
        ds.size(), 1.0 - alpha, 0.0,
        [&ds](std::size_t i, double gi, double g0) { return simplex_term(ds[i], gi, g0); }, cfg);
    bool all_cx = true, all_cv = true;
    for (const Distribution& d : ds) {
        const TailShape s = tail_shape(d, alpha);
        all_cx = all_cx && s.convex_beyond;
        all_cv = all_cv && s.concave_beyond;
    }
    if (!all_cx && !all_cv) {
        r.assumption_met = false;
        r.warnings.push_back("assumption unmet: marginals are not all convex or all concave beyond their quantiles");
    }
    return r;
}

MakarovResult makarov_two(const Distribution& d1, const Distribution& d2, double alpha, const MakarovConfig& cfg) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("makarov_two: alpha outside (0,1)");
    const double t_lo = std::max(cfg.t_lo, 0.0);
    const double t_hi = cfg.t_hi < 0.0 ? 1.0 - alpha : std::min(cfg.t_hi, 1.0 - alpha);
    if (t_lo > t_hi) throw DomainError("makarov_two: empty t range");
    auto f = [&](double t) {
        return d1.quantile(std::min(alpha + t, 1.0)) + d2.quantile(std::max(1.0 - t, alpha));
    };
    const std::size_t m = t_lo == t_hi ? 1 : static_cast<std::size_t>(std::max(cfg.grid_points, 2));
    std::vector<double> ts(m), x(m), y(m), sums(m);
    for (std::size_t k = 0; k < m; ++k) {
        ts[k] = m == 1 ? t_lo : (k + 1 == m ? t_hi : t_lo + (t_hi - t_lo) * static_cast<double>(k) / static_cast<double>(m - 1));
        x[k] = d1.quantile(std::min(alpha + ts[k], 1.0));
        y[k] = d2.quantile(std::max(1.0 - ts[k], alpha));
        sums[k] = x[k] + y[k];
    }
    const std::size_t k = first_min_index(sums);
    if (!std::isfinite(sums[k])) throw DivergenceError("makarov_two: infinite for every t");
    MakarovResult best{sums[k], ts[k]};
    if (m > 2) {
        const double lo = ts[k == 0 ? 0 : k - 1], hi = ts[std::min(k + 1, m - 1)];
        const Point1D p = golden_section(f, lo, hi);
        if (p.value < best.value && !ties_with(p.value, best.value)) best = {p.value, p.x};
    }
    return best;
}

double comonotonic_aggregate(std::span<const Distribution> marginals, const RiskLevels& levels,
                             const QuadratureConfig& cfg) {
    double s = 0.0;
    for (const Distribution& d : marginals) s += rvar(d, levels, cfg);
    return s;
}

double oracle_max_var_discrete(const QuantileMatrix& columns, double alpha) {
    const std::size_t n = columns.size();
    if (n < 2 || n > 3) throw SizeError("oracle_max_var_discrete: need 2 or 3 risks");
    const std::size_t m = columns[0].size();
    if (m == 0) throw DomainError("oracle_max_var_discrete: empty columns");
    for (const auto& col : columns) {
        if (col.size() != m) throw DomainError("oracle_max_var_discrete: columns must have equal length");
    }
    if ((n == 2 && m > 8) || (n == 3 && m > 6)) throw SizeError("oracle_max_var_discrete: too many atoms");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("oracle_max_var_discrete: alpha outside (0,1]");
    const auto k = static_cast<std::size_t>(
        std::clamp(std::ceil(alpha * static_cast<double>(m) - 1e-9), 1.0, static_cast<double>(m)));
    QuantileMatrix cols = columns;
    for (auto& c : cols) std::sort(c.begin(), c.end());
    double best = -kInfinity;
    std::vector<double> sums(m);
    auto visit = [&](const std::vector<double>& second, const std::vector<double>* third) {
        for (std::size_t r = 0; r < m; ++r) sums[r] = cols[0][r] + second[r] + (third ? (*third)[r] : 0.0);
        std::nth_element(sums.begin(), sums.begin() + static_cast<std::ptrdiff_t>(k - 1), sums.end());
        best = std::max(best, sums[k - 1]);
    };
    std::vector<double> second = cols[1];
    do {
        if (n == 2) {
            visit(second, nullptr);
        } else {
            std::vector<double> third = cols[2];
            do {
                visit(second, &third);
            } while (std::next_permutation(third.begin(), third.end()));
        }
    } while (std::next_permutation(second.begin(), second.end()));
    return best;
}

double oracle_max_var_discrete(std::span<const Distribution> marginals, std::size_t m, double alpha) {
    return oracle_max_var_discrete(quantile_matrix(marginals, m, Discretization::midpoint), alpha);
}

RearrangementResult oracle_rearrangement(const QuantileMatrix& columns, double alpha, int max_sweeps) {
    const std::size_t n = columns.size();
    if (n == 0) throw DomainError("oracle_rearrangement: empty matrix");
    const std::size_t m = columns[0].size();
    for (const auto& col : columns) {
        if (col.size() != m || m == 0) throw DomainError("oracle_rearrangement: ragged or empty columns");
    }
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("oracle_rearrangement: alpha outside [0,1)");
    const auto k = static_cast<std::size_t>(
        std::clamp(std::ceil(alpha * static_cast<double>(m) - 1e-9), 1.0, static_cast<double>(m)));
    const std::size_t rows = m - k + 1;

    QuantileMatrix tail(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> c = columns[j];
        std::sort(c.begin(), c.end());
        tail[j].assign(c.begin() + static_cast<std::ptrdiff_t>(k - 1), c.end());
    }
    auto row_min = [&]() {
        std::vector<double> s(rows, 0.0);
        for (const auto& c : tail) kernels::add_into(s, c);
        return kernels::argmin(s).value;
    };
    double best = row_min();
    if (n == 1) return {best, true, 0};

    std::vector<double> others(rows);
    std::vector<std::size_t> order(rows);
    int sweep = 0;
    while (sweep < max_sweeps) {
        ++sweep;
        bool changed = false;
        for (std::size_t j = 0; j < n; ++j) {
            std::fill(others.begin(), others.end(), 0.0);
            for (std::size_t l = 0; l < n; ++l) {
                if (l != j) kernels::add_into(others, tail[l]);
            }
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return others[a] < others[b]; });
            std::vector<double> desc = tail[j];
            std::sort(desc.begin(), desc.end(), std::greater<double>());
            std::vector<double> next(rows);
            for (std::size_t p = 0; p < rows; ++p) next[order[p]] = desc[p];
            if (next != tail[j]) {
                changed = true;
                tail[j] = std::move(next);
            }
        }
        const double v = row_min();
        if (!changed || !(v > best)) {
            best = std::max(best, v);
            return {best, true, sweep};
        }
        best = v;
    }
    return {best, false, sweep};
}

QuantileMatrix quantile_matrix(std::span<const Distribution> marginals, std::size_t m, Discretization how) {
    if (m == 0) throw DomainError("quantile_matrix: m must be positive");
    QuantileMatrix out;
    const double md = static_cast<double>(m);
    for (const Distribution& d : marginals) {
        std::vector<double> col(m);
        for (std::size_t k = 0; k < m; ++k) {
            const double kd = static_cast<double>(k);
            switch (how) {
                case Discretization::lower:
                    col[k] = d.quantile_closed(kd / md);
                    break;
                case Discretization::upper:
                    col[k] = d.quantile((kd + 1.0) / md);
                    break;
                case Discretization::midpoint:
                    col[k] = d.quantile((kd + 0.5) / md);
                    break;
            }
        }
        out.push_back(std::move(col));
    }
    return out;
}

QuantileMatrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open matrix file: " + path);
    QuantileMatrix cols;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t j = 0;
        while (std::getline(ss, cell, ',')) {
            double v;
            try {
                v = cell.find("inf") != std::string::npos ? kInfinity : std::stod(cell);
            } catch (const std::exception&) {
                throw ConfigError("matrix file: bad number '" + cell + "' on row " + std::to_string(row + 1));
            }
            if (row == 0) cols.emplace_back();
            if (j >= cols.size()) throw ConfigError("matrix file: ragged row " + std::to_string(row + 1));
            cols[j].push_back(v);
            ++j;
        }
        if (j != cols.size()) throw ConfigError("matrix file: ragged row " + std::to_string(row + 1));
        ++row;
    }
    if (cols.empty()) throw ConfigError("matrix file is empty: " + path);
    return cols;
}

}  // namespace reinsure
