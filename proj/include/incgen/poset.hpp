#pragma once

#include "incgen/error.hpp"

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace incgen {

/// Covering relation of a poset together with the pair counts used by the
/// counting formulas: rho = |{(i,j) : i <= j}| and c = |covers|.
struct CoverData {
    std::vector<std::pair<int, int>> covers; // 1-based, lexicographically sorted
    int rho = 0;
    int c = 0;
};

/// A validated partial order on {1,...,n}. Immutable after construction and
/// cheap to copy; the covering relation and the support-pair index are
/// computed once and cached.
class Poset {
public:
    /// Validates reflexivity, antisymmetry and transitivity of an n x n
    /// relation matrix (row-major, leq[i*n+j] != 0 meaning i <= j) and wraps
    /// it. Throws Error with code NotReflexive / NotAntisymmetric /
    /// NotTransitive naming a witness.
    static Poset from_relation(int n, const std::vector<std::uint8_t>& leq) {
        if (n < 1)
            throw Error("InvalidSize", "poset ground set must have n >= 1");
        if (leq.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
            throw Error("InvalidSize", "relation matrix has wrong shape");
        for (int i = 0; i < n; ++i)
            if (!leq[static_cast<std::size_t>(i) * n + i])
                throw Error("NotReflexive", "NotReflexive(" + std::to_string(i + 1) + ")");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (leq[static_cast<std::size_t>(i) * n + j] && leq[static_cast<std::size_t>(j) * n + i])
                    throw Error("NotAntisymmetric", "NotAntisymmetric(" + std::to_string(i + 1) + "," +
                                                        std::to_string(j + 1) + ")");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (!leq[static_cast<std::size_t>(i) * n + j])
                    continue;
                for (int k = 0; k < n; ++k)
                    if (leq[static_cast<std::size_t>(j) * n + k] && !leq[static_cast<std::size_t>(i) * n + k])
                        throw Error("NotTransitive", "NotTransitive(" + std::to_string(i + 1) + "," +
                                                         std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
            }
        return Poset(std::make_shared<const Impl>(n, leq));
    }

    /// Standard linear order 1 < 2 < ... < n.
    static Poset chain(int n) {
        if (n < 1)
            throw Error("InvalidSize", "poset ground set must have n >= 1");
        std::vector<std::uint8_t> leq(static_cast<std::size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                leq[static_cast<std::size_t>(i) * n + j] = 1;
        return from_relation(n, leq);
    }

    /// Equality order: no two distinct elements comparable.
    static Poset antichain(int n) {
        if (n < 1)
            throw Error("InvalidSize", "poset ground set must have n >= 1");
        std::vector<std::uint8_t> leq(static_cast<std::size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i)
            leq[static_cast<std::size_t>(i) * n + i] = 1;
        return from_relation(n, leq);
    }

    int size() const { return impl_->n; }

    /// 1-based comparability test.
    bool leq(int i, int j) const {
        check_index(i);
        check_index(j);
        return impl_->leq[static_cast<std::size_t>(i - 1) * impl_->n + (j - 1)] != 0;
    }

    bool less(int i, int j) const { return i != j && leq(i, j); }

    const CoverData& cover_data() const { return impl_->cover; }
    int rho() const { return impl_->cover.rho; }
    int cover_count() const { return impl_->cover.c; }

    /// Support pairs (i,j) with i <= j, 1-based, lexicographic. Incidence
    /// matrices store one ring element per entry of this list.
    const std::vector<std::pair<int, int>>& pairs() const { return impl_->pairs; }

    /// Index of (i,j) in pairs(), or -1 when i and j are incomparable.
    int pair_index(int i, int j) const {
        check_index(i);
        check_index(j);
        return impl_->pair_index[static_cast<std::size_t>(i - 1) * impl_->n + (j - 1)];
    }

    bool operator==(const Poset& other) const {
        return impl_ == other.impl_ || (impl_->n == other.impl_->n && impl_->leq == other.impl_->leq);
    }
    bool operator!=(const Poset& other) const { return !(*this == other); }

private:
    struct Impl {
        int n;
        std::vector<std::uint8_t> leq;
        std::vector<std::pair<int, int>> pairs;
        std::vector<int> pair_index;
        CoverData cover;

        Impl(int n_, std::vector<std::uint8_t> leq_) : n(n_), leq(std::move(leq_)) {
            pair_index.assign(static_cast<std::size_t>(n) * n, -1);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (leq[static_cast<std::size_t>(i) * n + j]) {
                        pair_index[static_cast<std::size_t>(i) * n + j] = static_cast<int>(pairs.size());
                        pairs.emplace_back(i + 1, j + 1);
                    }
            cover.rho = static_cast<int>(pairs.size());
            for (auto [i, j] : pairs) {
                if (i == j)
                    continue;
                bool covered = true;
                for (int k = 1; k <= n && covered; ++k) {
                    if (k == i || k == j)
                        continue;
                    if (leq[static_cast<std::size_t>(i - 1) * n + (k - 1)] &&
                        leq[static_cast<std::size_t>(k - 1) * n + (j - 1)])
                        covered = false;
                }
                if (covered)
                    cover.covers.emplace_back(i, j);
            }
            cover.c = static_cast<int>(cover.covers.size());
        }
    };

    explicit Poset(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    void check_index(int i) const {
        if (i < 1 || i > impl_->n)
            throw Error("IndexOutOfRange", "IndexOutOfRange(" + std::to_string(i) + ")");
    }

    std::shared_ptr<const Impl> impl_;
};

enum class PosetKind { chain, antichain };

inline Poset standard_poset(PosetKind kind, int n) {
    return kind == PosetKind::chain ? Poset::chain(n) : Poset::antichain(n);
}

/// Alias for the validating factory, usable as a free function.
inline Poset validate_relation(int n, const std::vector<std::uint8_t>& leq) {
    return Poset::from_relation(n, leq);
}

/// Parses the line-oriented poset format:
///
///   # comment
///   n 3
///   rel 1 3
///   rel 2 3
///
/// Each `rel i j` declares i strictly below j; the reflexive-transitive
/// closure of the declared pairs is built and validated. A 2-cycle among the
/// declared pairs surfaces as NotAntisymmetric.
inline Poset parse_poset(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<std::uint8_t> strict;
    auto syntax_error = [&]() {
        return Error("SyntaxError", "SyntaxError(line " + std::to_string(lineno) + ")");
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#')
            continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (n < 0) {
            if (tok != "n")
                throw syntax_error();
            long long v = 0;
            if (!(ls >> v) || v < 1)
                throw syntax_error();
            std::string rest;
            if (ls >> rest)
                throw syntax_error();
            n = static_cast<int>(v);
            strict.assign(static_cast<std::size_t>(n) * n, 0);
        } else if (tok == "rel") {
            long long i = 0, j = 0;
            if (!(ls >> i >> j))
                throw syntax_error();
            std::string rest;
            if (ls >> rest)
                throw syntax_error();
            if (i < 1 || i > n)
                throw Error("IndexOutOfRange", "IndexOutOfRange(" + std::to_string(i) + ")");
            if (j < 1 || j > n)
                throw Error("IndexOutOfRange", "IndexOutOfRange(" + std::to_string(j) + ")");
            if (i != j)
                strict[static_cast<std::size_t>(i - 1) * n + (j - 1)] = 1;
        } else {
            throw syntax_error();
        }
    }
    if (n < 0)
        throw Error("SyntaxError", "SyntaxError(line " + std::to_string(lineno) + "): missing 'n' header");

    // Warshall closure of the declared strict pairs.
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (strict[static_cast<std::size_t>(i) * n + k])
                for (int j = 0; j < n; ++j)
                    if (strict[static_cast<std::size_t>(k) * n + j])
                        strict[static_cast<std::size_t>(i) * n + j] = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (strict[static_cast<std::size_t>(i) * n + j] && strict[static_cast<std::size_t>(j) * n + i])
                throw Error("NotAntisymmetric",
                            "NotAntisymmetric(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    for (int i = 0; i < n; ++i)
        strict[static_cast<std::size_t>(i) * n + i] = 1;
    return Poset::from_relation(n, strict);
}

/// Canonical writer: `n` header followed by the covering pairs in
/// lexicographic order. parse_poset(write_poset(p)) == p.
inline std::string write_poset(const Poset& p) {
    std::string out = "n " + std::to_string(p.size()) + "\n";
    for (auto [i, j] : p.cover_data().covers)
        out += "rel " + std::to_string(i) + " " + std::to_string(j) + "\n";
    return out;
}

} // namespace incgen
