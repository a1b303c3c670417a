#pragma once

// Genus-0 n-point Gromov-Witten invariants of G(2,4), reconstructed exactly
// from WDVV associativity relations (Kontsevich-Manin reconstruction).
//
// An invariant I_d(lambda_1, ..., lambda_n) is stored under a canonical key
// after normalization by the standard axioms:
//
//   * fundamental class: a sigma_{} insertion kills the invariant unless
//     (d, n) = (0, 3);
//   * divisor: a sigma_1 insertion contributes a factor d;
//   * dimension: the invariant vanishes unless
//     sum |lambda_i| = dim G + c_1-degree + n - 3 = 4 + 4d + n - 3;
//   * degree 0: the n = 3 invariants are classical triple intersections,
//     and everything else vanishes.
//
// Seeds: the three-point invariants of degree 1 and 2, read off the small
// quantum product (a*b = sum_d I_d(a, b, c) q^d dual(c)).
//
// Everything else is solved level by level in increasing (degree, number of
// insertions).  For each level, WDVV relations are generated from three
// deterministic families (four distinguished marks drawn from a level key;
// heavy-mark pairs; spectator sets padded with divisor classes), evaluated
// into exact integer linear equations in the level's unknowns (terms mixing
// two unknown factors cannot occur: the degree splits d1 + d2 = d put one
// factor strictly below the level), and the joint system is solved by exact
// integer elimination.  Every generated equation must be satisfied by the
// solution -- an inconsistent row is a hard internal error, an unpinned
// unknown is reported as underdetermined, and nothing is ever guessed.
//
// WDVV alone is provably insufficient: at the level of five weight-2
// insertions in degree 1, every relation couples the keys [2]^a [1,1]^(5-a)
// only through the consecutive sums x_a + x_(a+1) (all other spectator/mark
// shapes either have no admissible terms or only produce the same sums), so
// the alternating direction is a genuine kernel vector.  The missing
// equations come from projective duality: the isomorphism of G(2,4) sending
// a line in P3 to its annihilator in the dual P3 swaps the point condition
// sigma_2 with the plane condition sigma_11 and fixes sigma_1, sigma_21,
// sigma_22, while preserving curve degrees.  Invariants are therefore
// symmetric under exchanging the [2] and [1,1] multiplicities; the solver
// adds these symmetry rows to each level system and validates the axiom
// against every quantum seed at construction time.

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "scrollcalc/numeric.hpp"
#include "scrollcalc/partition.hpp"
#include "scrollcalc/quantum.hpp"
#include "scrollcalc/schubert.hpp"

namespace scrollcalc {

// The linear system at some level fails to pin an unknown invariant.
struct UnderdeterminedError : InternalError {
    using InternalError::InternalError;
};

// ---------------------------------------------------------------------------
// Keys, entries, budget.
// ---------------------------------------------------------------------------

struct GWKey {
    int d = 0;
    // Multiplicities of the non-divisor classes [2], [1,1], [2,1], [2,2]
    // (basis indices 2..5); divisor and unit classes are normalized away.
    std::array<int, 4> counts{};

    int insertions() const { return counts[0] + counts[1] + counts[2] + counts[3]; }

    int total_codim() const {
        return 2 * counts[0] + 2 * counts[1] + 3 * counts[2] + 4 * counts[3];
    }

    bool admissible() const {
        if (d < 1) return false;
        for (const int c : counts) {
            if (c < 0) return false;
        }
        return total_codim() == 4 * d + insertions() + 1;
    }

    auto operator<=>(const GWKey&) const = default;

    std::string to_string() const {
        static constexpr const char* kNames[4] = {"[2]", "[1,1]", "[2,1]", "[2,2]"};
        std::string ins;
        for (int i = 0; i < 4; ++i) {
            for (int c = 0; c < counts[static_cast<std::size_t>(i)]; ++c) {
                if (!ins.empty()) ins += ",";
                ins += kNames[i];
            }
        }
        return "d=" + std::to_string(d) + " ins=" + ins;
    }
};

enum class Provenance { Seed, Solved };

struct GWEntry {
    Int value;
    Provenance src = Provenance::Solved;
    bool from_cache = false;
};

struct GWBudget {
    int max_degree = 5;
    int max_insertions = 21;  // 4 * max_degree + 1
    std::size_t max_entries = 200000;
};

// ---------------------------------------------------------------------------
// Normalization by the GW axioms.
// ---------------------------------------------------------------------------

using InsertionCounts = std::array<int, 6>;  // multiplicities over the basis

struct NormalForm {
    bool literal = false;
    Int value;           // when literal
    GWKey key;           // when not literal: admissible, non-divisor classes only
    Int multiplier = 1;  // d^(number of removed divisor insertions)
};

namespace detail {

inline const std::array<std::array<std::array<int, 6>, 6>, 6>& classical_triples() {
    static const auto table = [] {
        std::array<std::array<std::array<int, 6>, 6>, 6> t{};
        const auto& basis = schubert_basis();
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 6; ++j) {
                const auto ij = lr_multiply(CohomElement::basis_elem(basis[static_cast<std::size_t>(i)]),
                                            CohomElement::basis_elem(basis[static_cast<std::size_t>(j)]));
                for (int k = 0; k < 6; ++k) {
                    const Int v = integrate(
                        lr_multiply(ij, CohomElement::basis_elem(basis[static_cast<std::size_t>(k)])));
                    t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                     [static_cast<std::size_t>(k)] = static_cast<int>(v);
                }
            }
        }
        return t;
    }();
    return table;
}

}  // namespace detail

inline NormalForm gw_normalize(int d, const InsertionCounts& counts) {
    if (d < 0) throw DomainError("negative curve degree d=" + std::to_string(d));
    for (const int c : counts) {
        if (c < 0) throw DomainError("negative insertion multiplicity");
    }
    NormalForm nf;
    const int n = counts[0] + counts[1] + counts[2] + counts[3] + counts[4] + counts[5];
    if (d == 0) {
        nf.literal = true;
        nf.value = 0;
        if (n != 3) return nf;  // degree-0 invariants vanish except for triples
        std::array<int, 3> idx{};
        int pos = 0;
        for (int i = 0; i < 6; ++i) {
            for (int c = 0; c < counts[static_cast<std::size_t>(i)]; ++c) {
                idx[static_cast<std::size_t>(pos++)] = i;
            }
        }
        nf.value = detail::classical_triples()[static_cast<std::size_t>(idx[0])]
                                              [static_cast<std::size_t>(idx[1])]
                                              [static_cast<std::size_t>(idx[2])];
        return nf;
    }
    if (counts[0] > 0) {  // fundamental-class insertion, positive degree
        nf.literal = true;
        nf.value = 0;
        return nf;
    }
    nf.multiplier = int_pow(Int(d), static_cast<unsigned>(counts[1]));
    nf.key.d = d;
    nf.key.counts = {counts[2], counts[3], counts[4], counts[5]};
    if (!nf.key.admissible()) {
        nf.literal = true;
        nf.value = 0;
        nf.multiplier = 1;
    }
    return nf;
}

inline InsertionCounts to_counts(const std::vector<Partition>& insertions) {
    InsertionCounts c{};
    for (const auto& p : insertions) ++c[static_cast<std::size_t>(basis_index(p))];
    return c;
}

// ---------------------------------------------------------------------------
// WDVV relations.
// ---------------------------------------------------------------------------

namespace detail {

// Codimensions of the basis classes sigma_{}, sigma_1, ..., sigma_22.
inline constexpr std::array<int, 6> kCodim = {0, 1, 2, 2, 3, 4};

// A single WDVV relation: S(pairing_a) - S(pairing_b) = 0, where for a
// pairing ((i,j),(k,l)) of four marks and the spectator multiset T,
//
//   S = sum_{A+B=T} sum_{d1+d2=d} sum_e  m(A)
//         I_{d1}(A, i, j, e) I_{d2}(B, dual(e), k, l),
//
// with m(A) the multinomial count of ways to split the multiset T.
struct WdvvRelation {
    int d = 0;
    std::array<int, 5> spectators{};  // counts of basis classes 1..5 in T
    std::array<int, 4> pairing_a{};   // marks (i, j, k, l): pairing {{i,j},{k,l}}
    std::array<int, 4> pairing_b{};
    auto operator<=>(const WdvvRelation&) const = default;
};

inline std::array<int, 4> normalize_pairing(int i, int j, int k, int l) {
    if (i > j) std::swap(i, j);
    if (k > l) std::swap(k, l);
    if (std::pair(i, j) > std::pair(k, l)) {
        std::swap(i, k);
        std::swap(j, l);
    }
    return {i, j, k, l};
}

inline std::optional<WdvvRelation> make_relation(int d, const std::array<int, 5>& T,
                                                 int i, int j, int k, int l) {
    const auto a = normalize_pairing(i, j, k, l);
    const auto b = normalize_pairing(i, k, j, l);
    if (a == b) return std::nullopt;  // the two sides coincide identically
    WdvvRelation rel;
    rel.d = d;
    rel.spectators = T;
    rel.pairing_a = std::min(a, b);
    rel.pairing_b = std::max(a, b);
    return rel;
}

// Mark pairs (i, j), i <= j, of given total codimension, drawn from the
// given basis-index range.
inline std::vector<std::pair<int, int>> mark_pairs(int weight, int lo, int hi) {
    std::vector<std::pair<int, int>> out;
    for (int i = lo; i <= hi; ++i) {
        for (int j = i; j <= hi; ++j) {
            if (kCodim[static_cast<std::size_t>(i)] + kCodim[static_cast<std::size_t>(j)] ==
                weight) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The solver.
// ---------------------------------------------------------------------------

class GWSolver {
public:
    explicit GWSolver(GWBudget budget = {}, int threads = 1)
        : budget_(budget), threads_(std::max(1, threads)) {
        seed_from_quantum();
    }

    // I_d(insertions) for an arbitrary multiset of basis classes.
    Int invariant(int d, const std::vector<Partition>& insertions) {
        const auto nf = gw_normalize(d, to_counts(insertions));
        if (nf.literal) return nf.value;
        ensure_solved(nf.key);
        return nf.multiplier * lookup(nf.key);
    }

    // Degree of the locus of degree-d rational ruled surfaces through
    // 4d + 1 general points: I_d([2], ..., [2]).
    Int q_d(int d) {
        require_positive(d);
        GWKey key{d, {4 * d + 1, 0, 0, 0}};
        ensure_solved(key);
        return lookup(key);
    }

    // Same family, one point condition traded for tangency to a plane:
    // I_d([2] x 4d, [1,1]).
    Int q_d_b(int d) {
        require_positive(d);
        GWKey key{d, {4 * d, 1, 0, 0}};
        ensure_solved(key);
        return lookup(key);
    }

    const std::map<GWKey, GWEntry>& table() const { return table_; }

    // ----- cache -----------------------------------------------------------

    void save_cache(const std::string& path) const {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw ResourceError("cannot open cache file for writing: " + path);
        for (const auto& [key, entry] : table_) {
            out << key.to_string() << " val=" << entry.value.str() << " src="
                << (entry.src == Provenance::Seed ? "seed" : "solved") << "\n";
        }
        if (!out) throw ResourceError("failed writing cache file: " + path);
    }

    void load_cache(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ResourceError("cannot open cache file for reading: " + path);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            parse_cache_line(line, line_no);
        }
    }

private:
    GWBudget budget_;
    int threads_;
    std::map<GWKey, GWEntry> table_;
    std::set<std::pair<int, int>> levels_done_;

    static void require_positive(int d) {
        if (d < 1) throw DomainError("need degree d >= 1, got " + std::to_string(d));
    }

    // Image of a key under the projective-duality automorphism of G(2,4).
    static GWKey dual_swap(const GWKey& key) {
        return GWKey{key.d, {key.counts[1], key.counts[0], key.counts[2], key.counts[3]}};
    }

    // ----- seeding ---------------------------------------------------------

    void seed_from_quantum() {
        const auto& basis = schubert_basis();
        for (int d = 1; d <= 2; ++d) {
            for (int x = 0; x < 6; ++x) {
                for (int y = x; y < 6; ++y) {
                    const auto prod = quantum_product(
                        QElement::basis_elem(basis[static_cast<std::size_t>(x)]),
                        QElement::basis_elem(basis[static_cast<std::size_t>(y)]));
                    for (int z = 0; z < 6; ++z) {
                        const Int val =
                            prod.coeff(basis[static_cast<std::size_t>(dual_index(z))], d);
                        InsertionCounts counts{};
                        ++counts[static_cast<std::size_t>(x)];
                        ++counts[static_cast<std::size_t>(y)];
                        ++counts[static_cast<std::size_t>(z)];
                        const auto nf = gw_normalize(d, counts);
                        if (nf.literal) {
                            if (val != nf.value) {
                                throw InternalError(
                                    "three-point seed contradicts a GW axiom at " +
                                    nf.key.to_string());
                            }
                            continue;
                        }
                        insert_entry(nf.key,
                                     exact_div(val, nf.multiplier, "divisor-axiom seed"),
                                     Provenance::Seed, false);
                    }
                }
            }
        }
        // Validate the duality axiom against the seeds: the quantum product
        // must be symmetric under the sigma_2 <-> sigma_11 swap.
        for (const auto& [key, entry] : table_) {
            const auto it = table_.find(dual_swap(key));
            if (it == table_.end() || it->second.value != entry.value) {
                throw InternalError("seed table violates projective duality at " +
                                    key.to_string());
            }
        }
    }

    void insert_entry(const GWKey& key, const Int& value, Provenance src, bool from_cache) {
        if (table_.size() >= budget_.max_entries) {
            throw ResourceError("invariant table exceeds the configured budget of " +
                                std::to_string(budget_.max_entries) + " entries");
        }
        auto [it, inserted] = table_.emplace(key, GWEntry{value, src, from_cache});
        if (!inserted && it->second.value != value) {
            throw InternalError("conflicting values for " + key.to_string() + ": stored " +
                                it->second.value.str() + ", new " + value.str());
        }
    }

    Int lookup(const GWKey& key) const {
        const auto it = table_.find(key);
        if (it == table_.end()) {
            throw InternalError("invariant not available after solving: " + key.to_string());
        }
        return it->second.value;
    }

    // ----- level machinery -------------------------------------------------

    void ensure_solved(const GWKey& key) {
        if (table_.contains(key)) return;
        if (key.d > budget_.max_degree) {
            throw ResourceError("degree " + std::to_string(key.d) +
                                " exceeds the configured budget max_degree=" +
                                std::to_string(budget_.max_degree));
        }
        if (key.insertions() > budget_.max_insertions) {
            throw ResourceError("insertion count " + std::to_string(key.insertions()) +
                                " exceeds the configured budget max_insertions=" +
                                std::to_string(budget_.max_insertions));
        }
        for (int d = 1; d <= key.d; ++d) {
            const int top = d < key.d ? 4 * d + 1 : key.insertions();
            for (int n = 2; n <= top; ++n) solve_level(d, n);
        }
    }

    // All dimension-admissible keys with given degree and insertion count.
    static std::vector<GWKey> level_keys(int d, int n) {
        std::vector<GWKey> keys;
        const int excess = 4 * d + 1 - n;  // = c21 + 2 c22
        if (excess < 0) return keys;
        for (int c22 = 0; 2 * c22 <= excess; ++c22) {
            const int c21 = excess - 2 * c22;
            const int rest = n - c21 - c22;  // = c2 + c11
            if (rest < 0) continue;
            for (int c2 = 0; c2 <= rest; ++c2) {
                keys.push_back(GWKey{d, {c2, rest - c2, c21, c22}});
            }
        }
        std::sort(keys.begin(), keys.end());
        return keys;
    }

    void solve_level(int d, int n) {
        if (!levels_done_.insert({d, n}).second) return;
        std::vector<GWKey> unknowns;
        for (const auto& key : level_keys(d, n)) {
            if (!table_.contains(key)) unknowns.push_back(key);
        }
        if (unknowns.empty()) return;

        std::map<GWKey, int> index;
        for (std::size_t i = 0; i < unknowns.size(); ++i) {
            index.emplace(unknowns[i], static_cast<int>(i));
        }
        const auto relations = generate_relations(d, n);
        auto rows = evaluate_relations(relations, index);
        append_duality_rows(unknowns, index, rows);
        const auto values = solve_linear_system(rows, unknowns);
        for (std::size_t i = 0; i < unknowns.size(); ++i) {
            insert_entry(unknowns[i], values[i], Provenance::Solved, false);
        }
    }

    struct LinearRow {
        std::vector<Int> coeff;
        Int rhs;
    };

    // Equations x_K = x_(swap K) from the projective-duality automorphism.
    void append_duality_rows(const std::vector<GWKey>& unknowns,
                             const std::map<GWKey, int>& index,
                             std::vector<LinearRow>& rows) const {
        for (std::size_t i = 0; i < unknowns.size(); ++i) {
            const GWKey swapped = dual_swap(unknowns[i]);
            if (swapped == unknowns[i]) continue;
            LinearRow row;
            row.coeff.assign(unknowns.size(), Int(0));
            row.coeff[i] = 1;
            row.rhs = 0;
            if (const auto it = table_.find(swapped); it != table_.end()) {
                row.rhs = it->second.value;
            } else {
                const auto jt = index.find(swapped);
                if (jt == index.end()) {
                    throw InternalError("duality partner missing for " +
                                        unknowns[i].to_string());
                }
                if (static_cast<std::size_t>(jt->second) < i) continue;  // added once
                row.coeff[static_cast<std::size_t>(jt->second)] = -1;
            }
            rows.push_back(std::move(row));
        }
    }

    // ----- relation generation ---------------------------------------------

    std::vector<detail::WdvvRelation> generate_relations(int d, int n) const {
        std::set<detail::WdvvRelation> rels;
        const auto add = [&](const std::array<int, 5>& T, int i, int j, int k, int l) {
            if (const auto rel = detail::make_relation(d, T, i, j, k, l)) {
                rels.insert(*rel);
            }
        };

        // Family 1: marks drawn from a level key.  For each key, one
        // insertion ec is traded for a menu pair (i, j) of equal total
        // codimension (divisor marks allowed), and two more insertions
        // (k, l) become the remaining distinguished marks.  Family 3 pads
        // the spectator multiset with one or two divisor classes, which
        // back-substitutes divisor-axiom multiples into fresh equations.
        for (const auto& key : level_keys(d, n)) {
            const std::array<int, 5> base = {0, key.counts[0], key.counts[1], key.counts[2],
                                             key.counts[3]};
            for (int ec = 1; ec <= 4; ++ec) {  // traded insertion, basis index ec+1
                if (base[static_cast<std::size_t>(ec)] == 0) continue;
                auto rem = base;
                --rem[static_cast<std::size_t>(ec)];
                const auto menu =
                    detail::mark_pairs(detail::kCodim[static_cast<std::size_t>(ec + 1)], 1, 4);
                for (int k = 1; k <= 4; ++k) {
                    if (rem[static_cast<std::size_t>(k)] == 0) continue;
                    for (int l = k; l <= 4; ++l) {
                        const int need = (l == k) ? 2 : 1;
                        if (rem[static_cast<std::size_t>(l)] < need) continue;
                        auto T = rem;
                        --T[static_cast<std::size_t>(k)];
                        --T[static_cast<std::size_t>(l)];
                        for (const auto& [i, j] : menu) {
                            add(T, i, j, k + 1, l + 1);
                            for (int pad = 1; pad <= 2; ++pad) {
                                auto padded = T;
                                padded[0] += pad;
                                add(padded, i, j, k + 1, l + 1);
                            }
                        }
                    }
                }
            }
        }

        // Family 2: heavy mark pairs.  The four marks carry total
        // codimension 5 or 6 with no divisor classes, and the spectator set
        // runs over all admissible complements, so level keys rich in [2,1]
        // and [2,2] appear in equations family 1 cannot produce.
        for (int w : {5, 6}) {
            const auto menu = detail::mark_pairs(w, 2, 5);
            const int target = 4 * d + n + 1 - w;  // total codim of the n-1 others
            std::array<int, 5> rest{};
            enumerate_rest(rest, 1, n - 1, target, [&](const std::array<int, 5>& multiset) {
                for (int k = 1; k <= 4; ++k) {
                    if (multiset[static_cast<std::size_t>(k)] == 0) continue;
                    for (int l = k; l <= 4; ++l) {
                        const int need = (l == k) ? 2 : 1;
                        if (multiset[static_cast<std::size_t>(l)] < need) continue;
                        auto T = multiset;
                        --T[static_cast<std::size_t>(k)];
                        --T[static_cast<std::size_t>(l)];
                        for (const auto& [i, j] : menu) {
                            add(T, i, j, k + 1, l + 1);
                        }
                    }
                }
            });
        }

        return {rels.begin(), rels.end()};
    }

    // Enumerates multisets over basis classes 2..5 (slots 1..4 of the
    // 5-slot array) with exactly `size` elements of total codimension
    // `codim`, invoking fn on each.
    template <typename Fn>
    static void enumerate_rest(std::array<int, 5>& acc, int slot, int size, int codim, Fn&& fn) {
        if (slot == 4) {
            // Last slot holds class [2,2] of codimension 4.
            if (codim == 4 * size) {
                acc[4] = size;
                fn(const_cast<const std::array<int, 5>&>(acc));
                acc[4] = 0;
            }
            return;
        }
        const int w = detail::kCodim[static_cast<std::size_t>(slot + 1)];
        for (int c = 0; c <= size && c * w <= codim; ++c) {
            acc[static_cast<std::size_t>(slot)] = c;
            enumerate_rest(acc, slot + 1, size - c, codim - c * w, fn);
            acc[static_cast<std::size_t>(slot)] = 0;
        }
    }

    // ----- relation evaluation ----------------------------------------------

    std::vector<LinearRow> evaluate_relations(const std::vector<detail::WdvvRelation>& rels,
                                              const std::map<GWKey, int>& index) const {
        std::vector<LinearRow> rows(rels.size());
        const auto work = [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                rows[i] = evaluate_one(rels[i], index);
            }
        };
        if (threads_ == 1 || rels.size() < 64) {
            work(0, rels.size());
            return rows;
        }
        const std::size_t nthreads =
            std::min<std::size_t>(static_cast<std::size_t>(threads_), rels.size());
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(nthreads);
        const std::size_t chunk = (rels.size() + nthreads - 1) / nthreads;
        for (std::size_t t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    work(t * chunk, std::min(rels.size(), (t + 1) * chunk));
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
        return rows;
    }

    // One invariant factor inside a relation term: either a known value or
    // a multiple of a level unknown.
    struct FactorVal {
        Int known;     // meaningful when idx < 0
        int idx = -1;  // unknown column, or -1
        Int scale;     // multiplier on the unknown (divisor-axiom powers)
    };

    FactorVal resolve(int deg, const InsertionCounts& counts,
                      const std::map<GWKey, int>& index) const {
        const auto nf = gw_normalize(deg, counts);
        FactorVal f;
        if (nf.literal) {
            f.known = nf.value;
            return f;
        }
        if (const auto it = table_.find(nf.key); it != table_.end()) {
            f.known = nf.multiplier * it->second.value;
            return f;
        }
        if (const auto it = index.find(nf.key); it != index.end()) {
            f.idx = it->second;
            f.scale = nf.multiplier;
            return f;
        }
        throw InternalError("relation references an unsolved invariant: " +
                            nf.key.to_string());
    }

    LinearRow evaluate_one(const detail::WdvvRelation& rel,
                           const std::map<GWKey, int>& index) const {
        LinearRow row;
        row.coeff.assign(index.size(), Int(0));
        Int constant = 0;

        const auto accumulate = [&](const std::array<int, 4>& marks, int sign) {
            const auto& T = rel.spectators;
            std::array<int, 5> A{};
            for (A[0] = 0; A[0] <= T[0]; ++A[0]) {
                for (A[1] = 0; A[1] <= T[1]; ++A[1]) {
                    for (A[2] = 0; A[2] <= T[2]; ++A[2]) {
                        for (A[3] = 0; A[3] <= T[3]; ++A[3]) {
                            for (A[4] = 0; A[4] <= T[4]; ++A[4]) {
                                Int mult = sign;
                                for (int s = 0; s < 5; ++s) {
                                    mult *= binomial(static_cast<unsigned>(T[static_cast<std::size_t>(s)]),
                                                     static_cast<unsigned>(A[static_cast<std::size_t>(s)]));
                                }
                                for (int d1 = 0; d1 <= rel.d; ++d1) {
                                    for (int e = 0; e < 6; ++e) {
                                        InsertionCounts left{};
                                        InsertionCounts right{};
                                        for (int s = 0; s < 5; ++s) {
                                            left[static_cast<std::size_t>(s + 1)] =
                                                A[static_cast<std::size_t>(s)];
                                            right[static_cast<std::size_t>(s + 1)] =
                                                T[static_cast<std::size_t>(s)] -
                                                A[static_cast<std::size_t>(s)];
                                        }
                                        ++left[static_cast<std::size_t>(marks[0])];
                                        ++left[static_cast<std::size_t>(marks[1])];
                                        ++left[static_cast<std::size_t>(e)];
                                        ++right[static_cast<std::size_t>(dual_index(e))];
                                        ++right[static_cast<std::size_t>(marks[2])];
                                        ++right[static_cast<std::size_t>(marks[3])];

                                        const auto f1 = resolve(d1, left, index);
                                        if (f1.idx < 0 && f1.known == 0) continue;
                                        const auto f2 = resolve(rel.d - d1, right, index);
                                        if (f2.idx < 0 && f2.known == 0) continue;
                                        if (f1.idx >= 0 && f2.idx >= 0) {
                                            throw InternalError(
                                                "WDVV term with two unknown factors");
                                        }
                                        if (f1.idx >= 0) {
                                            row.coeff[static_cast<std::size_t>(f1.idx)] +=
                                                mult * f1.scale * f2.known;
                                        } else if (f2.idx >= 0) {
                                            row.coeff[static_cast<std::size_t>(f2.idx)] +=
                                                mult * f2.scale * f1.known;
                                        } else {
                                            constant += mult * f1.known * f2.known;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        };
        accumulate(rel.pairing_a, 1);
        accumulate(rel.pairing_b, -1);
        row.rhs = -constant;
        return row;
    }

    // ----- exact linear solving ---------------------------------------------

    static void content_normalize(std::vector<Int>& row) {
        Int g = 0;
        for (const auto& v : row) g = boost::multiprecision::gcd(g, v);
        if (g == 0) return;
        for (const auto& v : row) {
            if (v != 0) {
                if (v < 0) g = -g;
                break;
            }
        }
        for (auto& v : row) v = exact_div(v, g, "row content");
    }

    std::vector<Int> solve_linear_system(const std::vector<LinearRow>& rows,
                                         const std::vector<GWKey>& unknowns) const {
        const std::size_t m = unknowns.size();
        // pivot_rows[c], when present, has its first nonzero coefficient at
        // column c and zeros at every other pivot column (maintained
        // Gauss-Jordan style, all arithmetic exact over the integers).
        std::vector<std::vector<Int>> pivot_rows(m);
        std::vector<bool> has_pivot(m, false);

        for (const auto& in : rows) {
            std::vector<Int> row = in.coeff;
            row.push_back(in.rhs);
            for (std::size_t c = 0; c < m; ++c) {
                if (!has_pivot[c] || row[c] == 0) continue;
                const Int a = pivot_rows[c][c];
                const Int b = row[c];
                for (std::size_t j = 0; j <= m; ++j) {
                    row[j] = row[j] * a - b * pivot_rows[c][j];
                }
            }
            content_normalize(row);
            std::size_t lead = m;
            for (std::size_t c = 0; c < m; ++c) {
                if (row[c] != 0) {
                    lead = c;
                    break;
                }
            }
            if (lead == m) {
                if (row[m] != 0) {
                    throw InternalError(
                        "inconsistent WDVV system: a relation reduces to 0 = " +
                        row[m].str());
                }
                continue;  // redundant relation
            }
            for (std::size_t c = 0; c < m; ++c) {
                if (!has_pivot[c] || pivot_rows[c][lead] == 0) continue;
                const Int a = row[lead];
                const Int b = pivot_rows[c][lead];
                for (std::size_t j = 0; j <= m; ++j) {
                    pivot_rows[c][j] = pivot_rows[c][j] * a - b * row[j];
                }
                content_normalize(pivot_rows[c]);
            }
            pivot_rows[lead] = std::move(row);
            has_pivot[lead] = true;
        }

        for (std::size_t c = 0; c < m; ++c) {
            if (!has_pivot[c]) {
                throw UnderdeterminedError(
                    "WDVV relations do not determine " + unknowns[c].to_string() +
                    "; refusing to guess");
            }
        }
        std::vector<Int> values(m);
        for (std::size_t c = 0; c < m; ++c) {
            const std::string what = "solved invariant " + unknowns[c].to_string();
            values[c] = exact_div(pivot_rows[c][m], pivot_rows[c][c], what.c_str());
        }
        return values;
    }

    // ----- cache parsing -----------------------------------------------------

    static ParseError line_error(int line_no, const std::string& what) {
        return ParseError("cache line " + std::to_string(line_no) + ": " + what);
    }

    void parse_cache_line(const std::string& line, int line_no) {
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (start <= line.size()) {
            const auto space = line.find(' ', start);
            if (space == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, space - start));
            start = space + 1;
        }
        if (fields.size() != 4) {
            throw line_error(line_no, "expected 4 fields, got " +
                                          std::to_string(fields.size()));
        }
        const auto expect_prefix = [&](const std::string& field,
                                       const std::string& prefix) -> std::string {
            if (field.rfind(prefix, 0) != 0) {
                throw line_error(line_no, "expected field \"" + prefix + "...\", got \"" +
                                              field + "\"");
            }
            return field.substr(prefix.size());
        };

        const std::string d_str = expect_prefix(fields[0], "d=");
        int d = 0;
        const auto [dp, dec] = std::from_chars(d_str.data(), d_str.data() + d_str.size(), d);
        if (dec != std::errc() || dp != d_str.data() + d_str.size()) {
            throw line_error(line_no, "bad degree \"" + d_str + "\"");
        }

        const std::string ins_str = expect_prefix(fields[1], "ins=");
        InsertionCounts counts{};
        std::size_t pos = 0;
        while (pos < ins_str.size()) {
            const auto close = ins_str.find(']', pos);
            if (ins_str[pos] != '[' || close == std::string::npos) {
                throw line_error(line_no, "bad insertion list \"" + ins_str + "\"");
            }
            Partition p;
            try {
                p = Partition::parse(ins_str.substr(pos, close - pos + 1));
            } catch (const ParseError& e) {
                throw line_error(line_no, e.what());
            }
            if (!p.fits_box(2, 2) || p.weight() < 2) {
                throw line_error(line_no, "class " + p.to_string() +
                                              " cannot appear in a normalized key");
            }
            ++counts[static_cast<std::size_t>(basis_index(p))];
            pos = close + 1;
            if (pos < ins_str.size()) {
                if (ins_str[pos] != ',') {
                    throw line_error(line_no, "expected ',' in insertion list");
                }
                ++pos;
            }
        }
        if (counts == InsertionCounts{}) {
            throw line_error(line_no, "empty insertion list");
        }

        const std::string val_str = expect_prefix(fields[2], "val=");
        if (val_str.empty() ||
            val_str.find_first_not_of("0123456789", val_str[0] == '-' ? 1 : 0) !=
                std::string::npos ||
            (val_str[0] == '-' && val_str.size() == 1)) {
            throw line_error(line_no, "bad value \"" + val_str + "\"");
        }
        const Int value(val_str);

        const std::string src_str = expect_prefix(fields[3], "src=");
        Provenance src;
        if (src_str == "seed") {
            src = Provenance::Seed;
        } else if (src_str == "solved") {
            src = Provenance::Solved;
        } else {
            throw line_error(line_no, "bad provenance \"" + src_str + "\"");
        }

        if (d < 1) throw line_error(line_no, "stored keys must have degree >= 1");
        const auto nf = gw_normalize(d, counts);
        if (nf.literal || nf.multiplier != 1) {
            throw line_error(line_no, "dimension-inadmissible key");
        }
        insert_entry(nf.key, value, src, true);
    }
};

}  // namespace scrollcalc
