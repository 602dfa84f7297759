#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "homscope/error.hpp"
#include "homscope/graph.hpp"
#include "homscope/hom.hpp"
#include "homscope/parallel.hpp"
#include "homscope/pattern_set.hpp"

namespace homscope {

using Rational = boost::multiprecision::cpp_rational;
using IntMatrix = std::vector<std::vector<Count>>;

/// M[i][j] = hom(F_i, F_j).
struct HomMatrix {
    std::vector<std::string> names;
    IntMatrix entries;

    std::size_t size() const noexcept { return entries.size(); }
};

inline void validate_square(const std::vector<std::string> & names, const IntMatrix & m)
{
    if (names.size() != m.size())
        throw InvariantError("matrix has " + std::to_string(m.size()) + " rows but " + std::to_string(names.size())
                             + " names");
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != m.size())
            throw InvariantError("matrix is not square");
        for (const auto & x : m[i])
            if (x < 0)
                throw InvariantError("matrix has a negative entry");
        if (m[i][i] <= 0)
            throw InvariantError("matrix diagonal entry " + std::to_string(i) + " is not positive");
    }
}

inline HomMatrix build_hom_matrix(const PatternSet & patterns, const CountOptions & opt = {})
{
    const std::size_t m = patterns.size();
    HomMatrix out{patterns.names(), IntMatrix(m, std::vector<Count>(m, 0))};
    parallel_for(m * m, [&](std::size_t cell) {
        const auto i = cell / m, j = cell % m;
        out.entries[i][j] = count_hom(patterns[i].graph, patterns[j].graph, opt);
    });
    validate_square(out.names, out.entries);
    return out;
}

/// Wraps a user-supplied matrix (e.g. a published table) without recomputation.
inline HomMatrix literal_hom_matrix(std::vector<std::string> names, IntMatrix entries)
{
    validate_square(names, entries);
    return HomMatrix{std::move(names), std::move(entries)};
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
inline std::size_t exact_rank(IntMatrix a)
{
    const std::size_t rows = a.size();
    if (rows == 0)
        return 0;
    const std::size_t cols = a[0].size();
    Count prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t k = c + 1; k < cols; ++k) {
                Count num = a[rank][c] * a[r][k] - a[r][c] * a[rank][k];
                if (num % prev != 0)
                    throw InternalError("Bareiss elimination: inexact division");
                a[r][k] = num / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

inline std::size_t exact_rank(const HomMatrix & m) { return exact_rank(m.entries); }

inline IntMatrix principal_submatrix(const IntMatrix & a, const std::vector<std::size_t> & idx)
{
    IntMatrix out(idx.size(), std::vector<Count>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j)
            out[i][j] = a[idx[i]][idx[j]];
    return out;
}

inline IntMatrix select_rows(const IntMatrix & a, const std::vector<std::size_t> & idx)
{
    IntMatrix out;
    for (auto i : idx)
        out.push_back(a[i]);
    return out;
}

/// Row `pattern` written as a rational combination of the kept rows in `circuit`.
struct PatternDependency {
    std::size_t pattern;
    std::vector<std::size_t> circuit;
    std::vector<Rational> coefficients;
};

struct RedundancyReport {
    std::size_t rank = 0;
    /// Suggested reduced set (indices into the input); same rank as the full matrix.
    std::vector<std::size_t> kept;
    /// Patterns left out of the suggestion, each with its linear relation.
    std::vector<PatternDependency> dependencies;
    /// Every pattern whose row lies in the span of the other rows.
    std::vector<std::size_t> in_span_of_others;
};

namespace detail {

/// Solves sum_j x_j * basis[j] = target over Q. Basis rows must be independent
/// and span target; throws InternalError otherwise.
inline std::vector<Rational> solve_combination(const IntMatrix & basis, const std::vector<Count> & target)
{
    const std::size_t k = basis.size();
    const std::size_t cols = target.size();
    // augmented system: cols equations, k unknowns
    std::vector<std::vector<Rational>> a(cols, std::vector<Rational>(k + 1));
    for (std::size_t e = 0; e < cols; ++e) {
        for (std::size_t j = 0; j < k; ++j)
            a[e][j] = Rational(basis[j][e]);
        a[e][k] = Rational(target[e]);
    }
    std::vector<std::size_t> pivot_row(k, cols);
    std::size_t r = 0;
    for (std::size_t j = 0; j < k; ++j) {
        std::size_t p = r;
        while (p < cols && a[p][j] == 0)
            ++p;
        if (p == cols)
            throw InternalError("dependency basis is not independent");
        std::swap(a[p], a[r]);
        for (std::size_t e = 0; e < cols; ++e) {
            if (e == r || a[e][j] == 0)
                continue;
            const Rational f = a[e][j] / a[r][j];
            for (std::size_t t = j; t <= k; ++t)
                a[e][t] -= f * a[r][t];
        }
        pivot_row[j] = r++;
    }
    for (std::size_t e = r; e < cols; ++e)
        if (a[e][k] != 0)
            throw InternalError("row is not in the span of the kept rows");
    std::vector<Rational> x(k);
    for (std::size_t j = 0; j < k; ++j)
        x[j] = a[pivot_row[j]][k] / a[pivot_row[j]][j];
    return x;
}

} // namespace detail

/// Finds linear redundancy among pattern rows. Never modifies the input; the
/// reduced set is a suggestion chosen greedily in input order so that its
/// principal submatrix keeps the full rank.
inline RedundancyReport find_redundant_patterns(const HomMatrix & m)
{
    RedundancyReport rep;
    const auto & a = m.entries;
    const std::size_t n = a.size();
    rep.rank = exact_rank(a);

    std::vector<std::size_t> kept;
    std::size_t kept_rank = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto trial = kept;
        trial.push_back(i);
        const auto r = exact_rank(principal_submatrix(a, trial));
        if (r > kept_rank) {
            kept = std::move(trial);
            kept_rank = r;
        }
    }
    if (kept_rank < rep.rank) {
        // no principal choice reached full rank greedily; fall back to independent rows
        kept.clear();
        kept_rank = 0;
        for (std::size_t i = 0; i < n; ++i) {
            auto trial = kept;
            trial.push_back(i);
            const auto r = exact_rank(select_rows(a, trial));
            if (r > kept_rank) {
                kept = std::move(trial);
                kept_rank = r;
            }
        }
    }
    rep.kept = kept;

    const auto basis = select_rows(a, kept);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::find(kept.begin(), kept.end(), i) != kept.end())
            continue;
        const auto x = detail::solve_combination(basis, a[i]);
        PatternDependency dep{i, {}, {}};
        for (std::size_t j = 0; j < kept.size(); ++j)
            if (x[j] != 0) {
                dep.circuit.push_back(kept[j]);
                dep.coefficients.push_back(x[j]);
            }
        rep.dependencies.push_back(std::move(dep));
    }

    for (std::size_t i = 0; i < n; ++i) {
        IntMatrix others;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i)
                others.push_back(a[j]);
        if (exact_rank(others) == rep.rank)
            rep.in_span_of_others.push_back(i);
    }
    return rep;
}

inline RedundancyReport find_redundant_patterns(const PatternSet & patterns, const CountOptions & opt = {})
{
    return find_redundant_patterns(build_hom_matrix(patterns, opt));
}

// ---------------------------------------------------------------------------
// CSV: header row of names, then one row of integers per pattern.

inline std::string to_csv(const HomMatrix & m)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < m.names.size(); ++i)
        out << (i ? "," : "") << m.names[i];
    out << "\n";
    for (const auto & row : m.entries) {
        for (std::size_t j = 0; j < row.size(); ++j)
            out << (j ? "," : "") << row[j];
        out << "\n";
    }
    return out.str();
}

inline HomMatrix parse_matrix_csv(const std::string & text)
{
    std::istringstream in(text);
    std::string line;
    auto split = [](const std::string & l) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(l);
        while (std::getline(ls, cell, ',')) {
            const auto b = cell.find_first_not_of(" \t\r");
            const auto e = cell.find_last_not_of(" \t\r");
            cells.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
        }
        return cells;
    };
    std::vector<std::string> names;
    IntMatrix rows;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        auto cells = split(line);
        if (names.empty()) {
            names = std::move(cells);
            continue;
        }
        std::vector<Count> row;
        for (const auto & c : cells) {
            if (c.empty() || !std::all_of(c.begin(), c.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
                throw ParseError("matrix cell '" + c + "' is not a non-negative integer");
            row.emplace_back(c);
        }
        rows.push_back(std::move(row));
    }
    if (names.empty())
        throw ParseError("matrix CSV has no header");
    return literal_hom_matrix(std::move(names), std::move(rows));
}

} // namespace homscope
