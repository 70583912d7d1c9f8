#include "wordcollector/languages.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace wwc {

std::string language_name(Language lang) {
    switch (lang) {
        case Language::SigmaStar: return "sigma-star";
        case Language::Motzkin: return "motzkin";
        case Language::Rna: return "rna";
        case Language::NonConnected: return "nc";
    }
    return "?";
}

namespace {

const std::vector<std::string> kBracketAlphabet = {"a", "abar", "b"};

// C(a, b), 0 outside the triangle. Absorbs truncated sums and the k=0 case
// of the hairpin formula uniformly.
BigInt binomial(long a, long b) {
    if (a < 0 || b < 0 || b > a) return BigInt(0);
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return r;
}

BigInt catalan(long k) {
    BigInt r = binomial(2 * k, k);
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(k + 1));
    return r;
}

void require_bracket_alphabet(const WeightAssignment& a, Language kind) {
    if (a.letters != kBracketAlphabet)
        throw InvalidAssignmentError(language_name(kind) + " needs letters {a, abar, b}");
}

struct KeyBuilder {
    std::vector<std::size_t> non_unit;
    std::vector<double> log_weights;

    explicit KeyBuilder(const WeightAssignment& a) : non_unit(a.non_unit_indices()) {
        log_weights.reserve(non_unit.size());
        for (std::size_t idx : non_unit) log_weights.push_back(std::log(a.weights[idx]));
    }

    // composition[i] = occurrences of letter i
    WeightClass make_class(const std::vector<std::uint32_t>& composition, BigInt multiplicity) const {
        std::vector<std::uint32_t> counts;
        counts.reserve(non_unit.size());
        for (std::size_t idx : non_unit) counts.push_back(composition[idx]);
        SubComposition key = make_sub_composition(std::move(counts), log_weights);
        const double lw = key.log_weight;
        return WeightClass{std::move(key), std::move(multiplicity), lw};
    }
};

}  // namespace

LanguageModel LanguageModel::sigma_star(WeightAssignment assignment) {
    LanguageModel m;
    m.kind = Language::SigmaStar;
    m.assignment = normalize_keep_order(assignment);
    return m;
}

LanguageModel LanguageModel::motzkin(double wa, double wabar, double wb) {
    return make(Language::Motzkin, WeightAssignment{kBracketAlphabet, {wa, wabar, wb}});
}

LanguageModel LanguageModel::rna(int theta, double wa, double wabar, double wb) {
    return make(Language::Rna, WeightAssignment{kBracketAlphabet, {wa, wabar, wb}}, theta);
}

LanguageModel LanguageModel::non_connected(double wa, double wabar, double wb) {
    return make(Language::NonConnected, WeightAssignment{kBracketAlphabet, {wa, wabar, wb}});
}

LanguageModel LanguageModel::make(Language kind, WeightAssignment assignment, int theta) {
    LanguageModel m;
    m.kind = kind;
    if (kind != Language::SigmaStar) require_bracket_alphabet(assignment, kind);
    if (kind == Language::Rna) {
        if (theta < 1) throw InvalidAssignmentError("rna needs theta >= 1");
        m.theta = theta;
    }
    m.assignment = normalize_keep_order(assignment);
    return m;
}

char LanguageModel::symbol(std::size_t letter_index) const {
    if (kind != Language::SigmaStar) {
        static constexpr char kSymbols[3] = {'a', 'A', 'b'};
        return kSymbols[letter_index];
    }
    return static_cast<char>('a' + letter_index);
}

ClassSpectrum sigma_star_spectrum(const LanguageModel& model, int n) {
    if (model.kind != Language::SigmaStar) throw DomainError("model is not sigma-star");
    if (n < 0) throw DomainError("negative length");
    const WeightAssignment& a = model.assignment;
    const KeyBuilder kb(a);
    const std::size_t k = a.size();
    const std::size_t l = a.unit_count();

    std::vector<WeightClass> classes;
    std::vector<std::uint32_t> composition(k, 0);

    // Walk all sub-compositions x over the non-unit letters with |x| <= n.
    // Multiplicity: l^(n-|x|) * n! / (prod x_j! * (n-|x|)!).
    auto emit = [&](long used) {
        BigInt mult(1);
        long rest = n - used;
        for (std::size_t j = 0, seen = 0; j < kb.non_unit.size(); ++j) {
            const long xj = composition[kb.non_unit[j]];
            mult *= binomial(n - static_cast<long>(seen), xj);
            seen += xj;
        }
        if (l > 0) {
            BigInt pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(l),
                          static_cast<unsigned long>(rest));
            mult *= pw;
        } else if (rest > 0) {
            return;  // no unit letters to fill the remainder
        }
        classes.push_back(kb.make_class(composition, std::move(mult)));
    };

    auto rec = [&](auto&& self, std::size_t dim, long used) -> void {
        if (dim == kb.non_unit.size()) {
            emit(used);
            return;
        }
        for (long x = 0; used + x <= n; ++x) {
            composition[kb.non_unit[dim]] = static_cast<std::uint32_t>(x);
            self(self, dim + 1, used + x);
        }
        composition[kb.non_unit[dim]] = 0;
    };
    rec(rec, 0, 0);

    return build_spectrum(std::move(classes), n);
}

ClassSpectrum motzkin_spectrum(const LanguageModel& model, int n) {
    if (model.kind != Language::Motzkin) throw DomainError("model is not motzkin");
    if (n < 0) throw DomainError("negative length");
    const KeyBuilder kb(model.assignment);
    std::vector<WeightClass> classes;
    for (long k = 0; 2 * k <= n; ++k) {
        BigInt mult = catalan(k) * binomial(n, 2 * k);
        const std::vector<std::uint32_t> composition = {
            static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k),
            static_cast<std::uint32_t>(n - 2 * k)};
        classes.push_back(kb.make_class(composition, std::move(mult)));
    }
    return build_spectrum(std::move(classes), n);
}

ClassSpectrum rna_spectrum(const LanguageModel& model, int n) {
    if (model.kind != Language::Rna) throw DomainError("model is not rna");
    if (n < 0) throw DomainError("negative length");
    const long theta = model.theta;
    const KeyBuilder kb(model.assignment);
    std::vector<WeightClass> classes;
    for (long k = 0; 2 * k <= n; ++k) {
        BigInt mult = (k == 0) ? BigInt(1) : BigInt(0);
        for (long p = 1; theta * p <= n - 2 * k; ++p) {
            BigInt narayana = binomial(k, p) * binomial(k, p - 1);
            if (narayana == 0) continue;
            mpz_divexact_ui(narayana.get_mpz_t(), narayana.get_mpz_t(),
                            static_cast<unsigned long>(k));
            mult += narayana * binomial(n - theta * p, 2 * k);
        }
        if (mult == 0) continue;
        const std::vector<std::uint32_t> composition = {
            static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k),
            static_cast<std::uint32_t>(n - 2 * k)};
        classes.push_back(kb.make_class(composition, std::move(mult)));
    }
    return build_spectrum(std::move(classes), n);
}

ClassSpectrum nc_spectrum(const LanguageModel& model, int n) {
    if (model.kind != Language::NonConnected) throw DomainError("model is not nc");
    if (n < 0) throw DomainError("negative length");
    if (n % 2 != 0)
        throw EmptyLanguageError("language empty at odd length " + std::to_string(n));
    const KeyBuilder kb(model.assignment);
    std::vector<WeightClass> classes;
    if (n == 0) {
        classes.push_back(kb.make_class({0, 0, 0}, BigInt(1)));
        return build_spectrum(std::move(classes), n);
    }
    const long half = n / 2;
    for (long k = 1; k <= half; ++k) {
        BigInt mult = binomial(n - k - 1, half - 1) - binomial(n - k - 1, half);
        if (mult <= 0) continue;
        const std::vector<std::uint32_t> composition = {
            static_cast<std::uint32_t>(half - k), static_cast<std::uint32_t>(k),
            static_cast<std::uint32_t>(half)};
        classes.push_back(kb.make_class(composition, std::move(mult)));
    }
    return build_spectrum(std::move(classes), n);
}

ClassSpectrum language_spectrum(const LanguageModel& model, int n) {
    switch (model.kind) {
        case Language::SigmaStar: return sigma_star_spectrum(model, n);
        case Language::Motzkin: return motzkin_spectrum(model, n);
        case Language::Rna: return rna_spectrum(model, n);
        case Language::NonConnected: return nc_spectrum(model, n);
    }
    throw DomainError("unknown language");
}

namespace {

using WordLists = std::map<int, std::vector<std::string>>;

// S -> a S_ge A S | b S | eps ; S_ge -> a S_ge A S | b S_ge | b^theta
// (a and A are the bracket pair, b the neutral letter). theta = 1 gives the
// plain balanced-bracket language.
const std::vector<std::string>& rna_inner(int length, int theta, WordLists& s_memo,
                                          WordLists& u_memo);

const std::vector<std::string>& rna_outer(int length, int theta, WordLists& s_memo,
                                          WordLists& u_memo) {
    auto it = s_memo.find(length);
    if (it != s_memo.end()) return it->second;
    std::vector<std::string> words;
    if (length == 0) {
        words.push_back("");
    } else {
        for (const std::string& w : rna_outer(length - 1, theta, s_memo, u_memo))
            words.push_back("b" + w);
        for (int i = theta; i <= length - 2; ++i) {
            const auto& inner = rna_inner(i, theta, s_memo, u_memo);
            const auto& rest = rna_outer(length - 2 - i, theta, s_memo, u_memo);
            for (const std::string& u : inner)
                for (const std::string& s : rest)
                    words.push_back("a" + u + "A" + s);
        }
    }
    return s_memo.emplace(length, std::move(words)).first->second;
}

const std::vector<std::string>& rna_inner(int length, int theta, WordLists& s_memo,
                                          WordLists& u_memo) {
    auto it = u_memo.find(length);
    if (it != u_memo.end()) return it->second;
    std::vector<std::string> words;
    if (length >= theta) {
        if (length == theta) {
            words.push_back(std::string(static_cast<std::size_t>(theta), 'b'));
        } else {
            for (const std::string& w : rna_inner(length - 1, theta, s_memo, u_memo))
                words.push_back("b" + w);
        }
        for (int i = theta; i <= length - 2; ++i) {
            const auto& inner = rna_inner(i, theta, s_memo, u_memo);
            const auto& rest = rna_outer(length - 2 - i, theta, s_memo, u_memo);
            for (const std::string& u : inner)
                for (const std::string& s : rest)
                    words.push_back("a" + u + "A" + s);
        }
    }
    return u_memo.emplace(length, std::move(words)).first->second;
}

// Motzkin: S -> a S A S | b S | eps.
const std::vector<std::string>& motzkin_words(int length, WordLists& memo) {
    auto it = memo.find(length);
    if (it != memo.end()) return it->second;
    std::vector<std::string> words;
    if (length == 0) {
        words.push_back("");
    } else {
        for (const std::string& w : motzkin_words(length - 1, memo))
            words.push_back("b" + w);
        for (int i = 0; i <= length - 2; ++i) {
            const auto& inner = motzkin_words(i, memo);
            const auto& rest = motzkin_words(length - 2 - i, memo);
            for (const std::string& u : inner)
                for (const std::string& s : rest)
                    words.push_back("a" + u + "A" + s);
        }
    }
    return memo.emplace(length, std::move(words)).first->second;
}

// S -> A S b U | eps ; U -> a U b U | eps.
const std::vector<std::string>& nc_u_words(int length, WordLists& memo) {
    auto it = memo.find(length);
    if (it != memo.end()) return it->second;
    std::vector<std::string> words;
    if (length == 0) {
        words.push_back("");
    } else {
        for (int i = 0; i <= length - 2; ++i) {
            const auto& left = nc_u_words(i, memo);
            const auto& right = nc_u_words(length - 2 - i, memo);
            for (const std::string& u1 : left)
                for (const std::string& u2 : right)
                    words.push_back("a" + u1 + "b" + u2);
        }
    }
    return memo.emplace(length, std::move(words)).first->second;
}

const std::vector<std::string>& nc_s_words(int length, WordLists& s_memo, WordLists& u_memo) {
    auto it = s_memo.find(length);
    if (it != s_memo.end()) return it->second;
    std::vector<std::string> words;
    if (length == 0) {
        words.push_back("");
    } else {
        for (int i = 0; i <= length - 2; ++i) {
            const auto& left = nc_s_words(i, s_memo, u_memo);
            const auto& right = nc_u_words(length - 2 - i, u_memo);
            for (const std::string& s : left)
                for (const std::string& u : right)
                    words.push_back("A" + s + "b" + u);
        }
    }
    return s_memo.emplace(length, std::move(words)).first->second;
}

}  // namespace

std::vector<std::string> enumerate_words(const LanguageModel& model, int n, int oracle_cap) {
    if (n < 0) throw DomainError("negative length");
    if (n > oracle_cap)
        throw OracleCapError("enumeration capped at n = " + std::to_string(oracle_cap) +
                             ", requested " + std::to_string(n));
    switch (model.kind) {
        case Language::SigmaStar: {
            const std::size_t k = model.assignment.size();
            if (k > 26) throw OracleCapError("enumeration supports at most 26 letters");
            std::vector<std::string> words;
            std::string word(static_cast<std::size_t>(n), model.symbol(0));
            std::vector<std::size_t> odometer(static_cast<std::size_t>(n), 0);
            while (true) {
                words.push_back(word);
                std::size_t pos = 0;
                while (pos < odometer.size()) {
                    if (++odometer[pos] < k) {
                        word[pos] = model.symbol(odometer[pos]);
                        break;
                    }
                    odometer[pos] = 0;
                    word[pos] = model.symbol(0);
                    ++pos;
                }
                if (pos == odometer.size()) break;
            }
            return words;
        }
        case Language::Motzkin: {
            WordLists memo;
            return motzkin_words(n, memo);
        }
        case Language::Rna: {
            WordLists s_memo, u_memo;
            return rna_outer(n, model.theta, s_memo, u_memo);
        }
        case Language::NonConnected: {
            WordLists s_memo, u_memo;
            return nc_s_words(n, s_memo, u_memo);
        }
    }
    throw DomainError("unknown language");
}

ClassSpectrum spectrum_from_words(const std::vector<std::string>& words,
                                  const LanguageModel& model) {
    if (words.empty()) throw EmptyLanguageError("no words to group");
    const int n = static_cast<int>(words.front().size());
    const WeightAssignment& a = model.assignment;
    const KeyBuilder kb(a);

    std::map<char, std::size_t> letter_of;
    for (std::size_t i = 0; i < a.size(); ++i) letter_of[model.symbol(i)] = i;

    std::map<std::vector<std::uint32_t>, BigInt> groups;
    std::vector<std::uint32_t> composition(a.size());
    for (const std::string& w : words) {
        if (static_cast<int>(w.size()) != n) throw DomainError("words of mixed length");
        std::fill(composition.begin(), composition.end(), 0);
        for (char c : w) {
            auto it = letter_of.find(c);
            if (it == letter_of.end()) throw DomainError(std::string("unknown symbol '") + c + "'");
            ++composition[it->second];
        }
        std::vector<std::uint32_t> counts;
        counts.reserve(kb.non_unit.size());
        for (std::size_t idx : kb.non_unit) counts.push_back(composition[idx]);
        groups[counts] += 1;
    }

    std::vector<WeightClass> classes;
    classes.reserve(groups.size());
    for (auto& [counts, mult] : groups) {
        SubComposition key = make_sub_composition(counts, kb.log_weights);
        const double lw = key.log_weight;
        classes.push_back(WeightClass{std::move(key), std::move(mult), lw});
    }
    return build_spectrum(std::move(classes), n);
}

BigInt word_count(const LanguageModel& model, int n) {
    return language_spectrum(model, n).m;
}

}  // namespace wwc
