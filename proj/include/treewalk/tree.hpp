#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treewalk/errors.hpp"

namespace treewalk {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

// The (q+1)-homogeneous tree is modeled as the Cayley graph of the free
// product of q+1 order-2 groups: vertices are reduced words over the
// alphabet {0,...,q} (no equal adjacent letters), the root is the empty
// word, and depth equals distance to the root.

inline void check_branching(int q) {
    if (q < 1) fail(ErrorCode::InvalidTreeParams, "branching number q must be >= 1, got " + std::to_string(q));
}

// Operations on the boundary and on central measures need a Cantor-like
// boundary; they reject the degenerate two-ended tree q = 1.
inline void check_branching_at_least_two(int q) {
    check_branching(q);
    if (q < 2) fail(ErrorCode::InvalidTreeParams, "operation requires q >= 2, got q = 1");
}

inline bool word_is_reduced(std::span<const Letter> letters) {
    for (std::size_t i = 1; i < letters.size(); ++i)
        if (letters[i] == letters[i - 1]) return false;
    return true;
}

class Vertex {
public:
    explicit Vertex(int q) : q_(q) { check_branching(q); }

    Vertex(int q, Word letters) : q_(q), letters_(std::move(letters)) {
        check_branching(q);
        for (Letter c : letters_)
            if (c > static_cast<Letter>(q_))
                fail(ErrorCode::OutOfAlphabet,
                     "letter " + std::to_string(c) + " outside {0,...," + std::to_string(q_) + "}");
        if (!word_is_reduced(letters_))
            fail(ErrorCode::NotReduced, "word has two equal consecutive letters");
    }

    int q() const noexcept { return q_; }
    const Word& letters() const noexcept { return letters_; }
    std::size_t depth() const noexcept { return letters_.size(); }
    bool is_root() const noexcept { return letters_.empty(); }

    Vertex parent() const {
        if (is_root()) fail(ErrorCode::OutOfRange, "root has no parent");
        Vertex p(q_);
        p.letters_.assign(letters_.begin(), letters_.end() - 1);
        return p;
    }

    Vertex child(Letter c) const {
        Word w = letters_;
        w.push_back(c);
        return Vertex(q_, std::move(w));  // revalidates alphabet and reducedness
    }

    friend bool operator==(const Vertex& a, const Vertex& b) {
        return a.q_ == b.q_ && a.letters_ == b.letters_;
    }
    friend auto operator<=>(const Vertex& a, const Vertex& b) = default;

    std::string str() const {
        if (letters_.empty()) return "e";
        std::string s;
        for (std::size_t i = 0; i < letters_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(letters_[i]);
        }
        return s;
    }

private:
    int q_;
    Word letters_;
};

inline Vertex make_vertex(int q, Word letters) { return Vertex(q, std::move(letters)); }

inline Vertex root_vertex(int q) { return Vertex(q); }

inline void check_same_tree(int qa, int qb) {
    if (qa != qb)
        fail(ErrorCode::MismatchedTreeParams,
             "q = " + std::to_string(qa) + " vs q = " + std::to_string(qb));
}

inline std::size_t common_prefix_length(const Word& a, const Word& b) {
    const std::size_t m = std::min(a.size(), b.size());
    std::size_t i = 0;
    while (i < m && a[i] == b[i]) ++i;
    return i;
}

// d(u,v) = |u| + |v| - 2 * (longest common prefix).
inline std::int64_t distance(const Vertex& u, const Vertex& v) {
    check_same_tree(u.q(), v.q());
    const auto l = common_prefix_length(u.letters(), v.letters());
    return static_cast<std::int64_t>(u.depth() + v.depth() - 2 * l);
}

// The q+1 vertices at distance 1: parent (absent at the root) followed by
// extensions, in ascending letter order.
inline std::vector<Vertex> neighbors(const Vertex& v) {
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(v.q()) + 1);
    if (!v.is_root()) out.push_back(v.parent());
    for (Letter c = 0; c <= static_cast<Letter>(v.q()); ++c) {
        if (!v.is_root() && c == v.letters().back()) continue;
        out.push_back(v.child(c));
    }
    return out;
}

// A point of the boundary, addressed by an eventually periodic reduced
// word preperiod.period.period... Stored in canonical form (shortest
// preperiod, primitive period), so equality of the infinite expansions is
// equality of representations.
class End {
public:
    End(int q, Word preperiod, Word period)
        : q_(q), preperiod_(std::move(preperiod)), period_(std::move(period)) {
        check_branching_at_least_two(q_);
        if (period_.empty()) fail(ErrorCode::InvalidConfig, "end period must be nonempty");
        for (Letter c : preperiod_)
            if (c > static_cast<Letter>(q_)) fail(ErrorCode::OutOfAlphabet, "end preperiod letter out of alphabet");
        for (Letter c : period_)
            if (c > static_cast<Letter>(q_)) fail(ErrorCode::OutOfAlphabet, "end period letter out of alphabet");
        if (!word_is_reduced(preperiod_)) fail(ErrorCode::NotReduced, "end preperiod is not reduced");
        if (!word_is_reduced(period_)) fail(ErrorCode::NotReduced, "end period is not reduced");
        if (!preperiod_.empty() && preperiod_.back() == period_.front())
            fail(ErrorCode::NotReduced, "end expansion not reduced at preperiod/period junction");
        if (period_.back() == period_.front())
            fail(ErrorCode::NotReduced, "end expansion not reduced where the period repeats");
        canonicalize();
    }

    int q() const noexcept { return q_; }
    const Word& preperiod() const noexcept { return preperiod_; }
    const Word& period() const noexcept { return period_; }

    Letter letter_at(std::size_t i) const {
        if (i < preperiod_.size()) return preperiod_[i];
        return period_[(i - preperiod_.size()) % period_.size()];
    }

    Word prefix(std::size_t m) const {
        Word w;
        w.reserve(m);
        for (std::size_t i = 0; i < m; ++i) w.push_back(letter_at(i));
        return w;
    }

    friend bool operator==(const End& a, const End& b) {
        return a.q_ == b.q_ && a.preperiod_ == b.preperiod_ && a.period_ == b.period_;
    }

    std::string str() const {
        auto join = [](const Word& w) {
            std::string s;
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(w[i]);
            }
            return s;
        };
        return join(preperiod_) + ":" + join(period_);
    }

private:
    void canonicalize() {
        // Primitive period: the shortest block whose repetition gives the period.
        for (std::size_t p = 1; p <= period_.size() / 2; ++p) {
            if (period_.size() % p != 0) continue;
            bool repeats = true;
            for (std::size_t i = p; i < period_.size() && repeats; ++i)
                repeats = period_[i] == period_[i - p];
            if (repeats) {
                period_.resize(p);
                break;
            }
        }
        // Shortest preperiod: absorb trailing preperiod letters that already
        // agree with the rotated period.
        while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
            preperiod_.pop_back();
            std::rotate(period_.begin(), period_.end() - 1, period_.end());
        }
    }

    int q_;
    Word preperiod_;
    Word period_;
};

// Text format "pre:PER", comma-separated letters; empty preperiod as ":2,0".
inline End parse_end(int q, std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        fail(ErrorCode::InvalidConfig, "end spec must look like 'pre:PER', got '" + std::string(text) + "'");
    auto parse_word = [&](std::string_view part) {
        Word w;
        std::size_t pos = 0;
        while (pos < part.size()) {
            auto comma = part.find(',', pos);
            if (comma == std::string_view::npos) comma = part.size();
            const std::string tok(part.substr(pos, comma - pos));
            if (tok.empty()) fail(ErrorCode::InvalidConfig, "empty letter in end spec");
            std::size_t used = 0;
            unsigned long val = 0;
            try {
                val = std::stoul(tok, &used);
            } catch (const std::exception&) {
                fail(ErrorCode::InvalidConfig, "bad letter '" + tok + "' in end spec");
            }
            if (used != tok.size()) fail(ErrorCode::InvalidConfig, "bad letter '" + tok + "' in end spec");
            w.push_back(static_cast<Letter>(val));
            pos = comma + 1;
        }
        return w;
    };
    return End(q, parse_word(text.substr(0, colon)), parse_word(text.substr(colon + 1)));
}

inline std::size_t common_prefix_length(const Word& v, const End& omega) {
    std::size_t i = 0;
    while (i < v.size() && v[i] == omega.letter_at(i)) ++i;
    return i;
}

// The unique neighbor of v on the geodesic from v to omega: extend while v
// still lies on the ray, otherwise back up toward it.
inline Vertex step_toward(const Vertex& v, const End& omega) {
    check_same_tree(v.q(), omega.q());
    const auto l = common_prefix_length(v.letters(), omega);
    if (l == v.depth()) return v.child(omega.letter_at(l));
    return v.parent();
}

// Busemann value based at the root: |v| - 2 * (confluence of v with omega).
// Zero at the root, -1 per step toward omega, +1 per step away.
inline std::int64_t horofunction(const Vertex& v, const End& omega) {
    check_same_tree(v.q(), omega.q());
    const auto l = common_prefix_length(v.letters(), omega);
    return static_cast<std::int64_t>(v.depth()) - 2 * static_cast<std::int64_t>(l);
}

// Length of the common part of the rays from the root to two distinct ends.
inline std::int64_t end_confluence(const End& a, const End& b) {
    check_same_tree(a.q(), b.q());
    if (a == b) fail(ErrorCode::EqualEnds, "confluence of an end with itself is infinite");
    // Distinct eventually periodic expansions must disagree within one
    // period-aligned window past both preperiods.
    const std::size_t bound = std::max(a.preperiod().size(), b.preperiod().size()) +
                              std::lcm(a.period().size(), b.period().size()) + 1;
    for (std::size_t i = 0; i < bound; ++i)
        if (a.letter_at(i) != b.letter_at(i)) return static_cast<std::int64_t>(i);
    throw InvariantViolation("distinct ends failed to diverge within the periodic bound");
}

// Vertex on the ray [root, omega> at distance k from the root.
inline Vertex ray_vertex(const End& omega, std::size_t k) {
    return Vertex(omega.q(), omega.prefix(k));
}

}  // namespace treewalk
