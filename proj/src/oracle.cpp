#include "qma/oracle.hpp"

#include "qma/elim.hpp"
#include "qma/qnum.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace qma {

namespace {

using FreeWord = std::vector<int>;

long word_degree(const FreeAlgebraSpec& fa, const FreeWord& w) {
    long d = 0;
    for (int g : w) d += fa.degree.at(g);
    return d;
}

std::vector<long> word_multidegree(const FreeAlgebraSpec& fa, const FreeWord& w) {
    if (fa.multidegree.empty()) return {};
    std::vector<long> md(fa.multidegree[0].size(), 0);
    for (int g : w)
        for (std::size_t k = 0; k < md.size(); ++k) md[k] += fa.multidegree[g][k];
    return md;
}

void validate_spec(const FreeAlgebraSpec& fa, bool need_degree_homogeneous) {
    if (static_cast<int>(fa.degree.size()) != fa.ngens)
        throw std::invalid_argument("oracle: degree list size mismatch");
    if (!fa.multidegree.empty() && static_cast<int>(fa.multidegree.size()) != fa.ngens)
        throw std::invalid_argument("oracle: multidegree list size mismatch");
    for (int d : fa.degree)
        if (d < 1) throw std::invalid_argument("oracle: formal degrees must be positive");
    for (const FreeRelation& r : fa.relations) {
        if (r.terms.empty()) throw std::invalid_argument("oracle: empty relation");
        long d0 = word_degree(fa, r.terms[0].word);
        auto m0 = word_multidegree(fa, r.terms[0].word);
        for (const FreeTerm& t : r.terms) {
            if (t.coeff.is_zero()) throw std::invalid_argument("oracle: zero relation term");
            if (need_degree_homogeneous && word_degree(fa, t.word) != d0)
                throw std::invalid_argument("oracle: relation not degree-homogeneous");
            if (word_multidegree(fa, t.word) != m0)
                throw std::invalid_argument("oracle: relation not multidegree-homogeneous");
        }
    }
}

// words grouped by exact degree 0..max_deg
std::vector<std::vector<FreeWord>> words_by_degree(const FreeAlgebraSpec& fa, int max_deg) {
    std::vector<std::vector<FreeWord>> out(max_deg + 1);
    FreeWord cur;
    auto rec = [&](auto&& self, long deg) -> void {
        out[deg].push_back(cur);
        for (int g = 0; g < fa.ngens; ++g) {
            long nd = deg + fa.degree[g];
            if (nd > max_deg) continue;
            cur.push_back(g);
            self(self, nd);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace

std::vector<long> free_quotient_dims(const FreeAlgebraSpec& fa, int max_deg) {
    validate_spec(fa, true);
    auto words = words_by_degree(fa, max_deg);
    std::vector<long> dims(max_deg + 1, 0);
    dims[0] = 1;

    for (int n = 1; n <= max_deg; ++n) {
        // block words of degree n by multidegree
        std::map<std::vector<long>, std::map<FreeWord, int>> blocks;
        for (const FreeWord& w : words[n]) {
            auto& cols = blocks[word_multidegree(fa, w)];
            int id = static_cast<int>(cols.size());
            cols.emplace(w, id);
        }
        std::map<std::vector<long>, Eliminator<int>> elim;

        for (const FreeRelation& rel : fa.relations) {
            long rd = word_degree(fa, rel.terms[0].word);
            if (rd > n) continue;
            for (long a = 0; a + rd <= n; ++a) {
                for (const FreeWord& u : words[a]) {
                    for (const FreeWord& v : words[n - a - rd]) {
                        std::map<int, RatFunc> row;
                        std::vector<long> key;
                        for (const FreeTerm& t : rel.terms) {
                            FreeWord w = u;
                            w.insert(w.end(), t.word.begin(), t.word.end());
                            w.insert(w.end(), v.begin(), v.end());
                            if (key.empty()) key = word_multidegree(fa, w);
                            int col = blocks.at(key).at(w);
                            auto [it, fresh] = row.emplace(col, t.coeff);
                            if (!fresh) {
                                it->second += t.coeff;
                                if (it->second.is_zero()) row.erase(it);
                            }
                        }
                        if (!row.empty()) elim[key].insert(std::move(row));
                    }
                }
            }
        }
        long rank = 0;
        for (auto& [key, e] : elim) rank += e.rank();
        dims[n] = static_cast<long>(words[n].size()) - rank;
    }
    return dims;
}

bool ideal_membership(const FreeAlgebraSpec& fa, const FreeRelation& candidate, int big) {
    validate_spec(fa, false);
    if (candidate.terms.empty()) return true;
    std::vector<long> key = word_multidegree(fa, candidate.terms[0].word);
    long cand_deg = 0;
    for (const FreeTerm& t : candidate.terms) {
        if (word_multidegree(fa, t.word) != key)
            throw std::invalid_argument("ideal_membership: candidate not multidegree-homogeneous");
        cand_deg = std::max(cand_deg, word_degree(fa, t.word));
    }
    if (cand_deg > big) throw std::invalid_argument("ideal_membership: degree bound below candidate");

    long min_rd = big;
    for (const FreeRelation& r : fa.relations) {
        if (r.terms.empty()) continue;
        long rd = 0;
        std::vector<long> mr = word_multidegree(fa, r.terms[0].word);
        for (const FreeTerm& t : r.terms) {
            rd = std::max(rd, word_degree(fa, t.word));
            if (word_multidegree(fa, t.word) != mr)
                throw std::invalid_argument("ideal_membership: relation not multidegree-homogeneous");
        }
        min_rd = std::min(min_rd, rd);
    }

    // u, v pools grouped by (degree, multidegree); instances touch the
    // candidate's block only, so only multidegree-matching pairs are built
    auto words = words_by_degree(fa, static_cast<int>(big - std::min<long>(min_rd, big)));
    std::vector<std::map<std::vector<long>, std::vector<FreeWord>>> groups(words.size());
    for (std::size_t d = 0; d < words.size(); ++d)
        for (const FreeWord& w : words[d]) groups[d][word_multidegree(fa, w)].push_back(w);

    Eliminator<FreeWord> elim;
    for (const FreeRelation& rel : fa.relations) {
        if (rel.terms.empty()) continue;
        long rd = 0;
        for (const FreeTerm& t : rel.terms) rd = std::max(rd, word_degree(fa, t.word));
        std::vector<long> mrel = word_multidegree(fa, rel.terms[0].word);
        for (long a = 0; a + rd <= big; ++a) {
            for (const auto& [mu, us] : groups[a]) {
                std::vector<long> mv(key.size());
                for (std::size_t k = 0; k < key.size(); ++k) mv[k] = key[k] - mu[k] - mrel[k];
                for (long bd = 0; a + rd + bd <= big; ++bd) {
                    auto vit = groups[bd].find(mv);
                    if (vit == groups[bd].end()) continue;
                    for (const FreeWord& u : us)
                        for (const FreeWord& v : vit->second) {
                            std::map<FreeWord, RatFunc> row;
                            for (const FreeTerm& t : rel.terms) {
                                if (t.coeff.is_zero()) continue;
                                FreeWord w = u;
                                w.insert(w.end(), t.word.begin(), t.word.end());
                                w.insert(w.end(), v.begin(), v.end());
                                auto [it, fresh] = row.emplace(std::move(w), t.coeff);
                                if (!fresh) {
                                    it->second += t.coeff;
                                    if (it->second.is_zero()) row.erase(it);
                                }
                            }
                            if (!row.empty()) elim.insert(std::move(row));
                        }
                }
            }
        }
    }

    std::map<FreeWord, RatFunc> row;
    for (const FreeTerm& t : candidate.terms) {
        if (t.coeff.is_zero()) continue;
        auto [it, fresh] = row.emplace(t.word, t.coeff);
        if (!fresh) {
            it->second += t.coeff;
            if (it->second.is_zero()) row.erase(it);
        }
    }
    return elim.reduce(std::move(row)).empty();
}

std::vector<long> free_quotient_filtered_dims(const FreeAlgebraSpec& fa, int max_deg, int slack) {
    validate_spec(fa, false);
    const int big = max_deg + slack;
    auto words = words_by_degree(fa, big);

    // Relevant blocks: multidegrees reachable by words of degree <= max_deg.
    // Column order within a block puts high degrees first so echelon rows
    // with a low-degree pivot have all support at low degree.
    struct Block {
        std::map<FreeWord, int> col_of;
        std::vector<long> col_degree;  // by column id
        std::vector<long> words_le;    // #words of degree <= D, D = 0..max_deg
    };
    std::map<std::vector<long>, Block> blocks;

    {
        // collect words per block in (degree descending, lex) order
        std::map<std::vector<long>, std::vector<std::pair<long, FreeWord>>> staged;
        for (long d = 0; d <= big; ++d)
            for (const FreeWord& w : words[d]) staged[word_multidegree(fa, w)].push_back({d, w});
        for (auto& [key, list] : staged) {
            bool relevant = false;
            for (auto& [d, w] : list)
                if (d <= max_deg) relevant = true;
            if (!relevant) continue;
            std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
                return a.first != b.first ? a.first > b.first : a.second < b.second;
            });
            Block b;
            b.words_le.assign(max_deg + 1, 0);
            for (auto& [d, w] : list) {
                b.col_of.emplace(w, static_cast<int>(b.col_degree.size()));
                b.col_degree.push_back(d);
                for (long D = d; D <= max_deg; ++D) ++b.words_le[D];
            }
            blocks.emplace(key, std::move(b));
        }
    }

    std::map<std::vector<long>, Eliminator<int>> elim;
    for (const FreeRelation& rel : fa.relations) {
        long rd = 0;
        for (const FreeTerm& t : rel.terms) rd = std::max(rd, word_degree(fa, t.word));
        for (long a = 0; a + rd <= big; ++a) {
            for (const FreeWord& u : words[a]) {
                for (long bdeg = 0; a + rd + bdeg <= big; ++bdeg) {
                    for (const FreeWord& v : words[bdeg]) {
                        std::vector<long> key = word_multidegree(fa, u);
                        {
                            auto mr = word_multidegree(fa, rel.terms[0].word);
                            auto mv = word_multidegree(fa, v);
                            for (std::size_t k = 0; k < key.size(); ++k) key[k] += mr[k] + mv[k];
                        }
                        auto bit = blocks.find(key);
                        if (bit == blocks.end()) continue;
                        std::map<int, RatFunc> row;
                        for (const FreeTerm& t : rel.terms) {
                            FreeWord w = u;
                            w.insert(w.end(), t.word.begin(), t.word.end());
                            w.insert(w.end(), v.begin(), v.end());
                            int col = bit->second.col_of.at(w);
                            auto [it, fresh] = row.emplace(col, t.coeff);
                            if (!fresh) {
                                it->second += t.coeff;
                                if (it->second.is_zero()) row.erase(it);
                            }
                        }
                        if (!row.empty()) elim[key].insert(std::move(row));
                    }
                }
            }
        }
    }

    std::vector<long> dims(max_deg + 1, 0);
    for (auto& [key, b] : blocks) {
        std::vector<long> ideal_le(max_deg + 1, 0);
        auto eit = elim.find(key);
        if (eit != elim.end()) {
            for (const auto& [lead, row] : eit->second.pivots()) {
                long d = b.col_degree[lead];
                for (long D = d; D <= max_deg; ++D) ++ideal_le[D];
            }
        }
        for (int D = 0; D <= max_deg; ++D) dims[D] += b.words_le[D] - ideal_le[D];
    }
    return dims;
}

std::vector<long> filtered_span_dims(const Presentation& p, int max_deg) {
    std::vector<Unit> alphabet;
    for (int g = 0; g < p.size(); ++g) {
        alphabet.push_back({g, 1});
        if (p.gen(g).invertible && !p.inverse_images.count(g)) alphabet.push_back({g, -1});
    }
    // group words by degree, normalize, insert into one eliminator keyed by
    // normal monomial; record cumulative rank after each degree level
    std::vector<std::vector<std::vector<Unit>>> words(max_deg + 1);
    std::vector<Unit> cur;
    auto rec = [&](auto&& self, long deg) -> void {
        words[deg].push_back(cur);
        for (const Unit& u : alphabet) {
            long nd = deg + p.gen(u.gen).formal_degree;
            if (nd > max_deg) continue;
            cur.push_back(u);
            self(self, nd);
            cur.pop_back();
        }
    };
    rec(rec, 0);

    Eliminator<Monomial> elim;
    std::vector<long> dims(max_deg + 1, 0);
    for (int d = 0; d <= max_deg; ++d) {
        for (const auto& w : words[d]) {
            NcPoly nf = normal_form(p, RatFunc(1), w);
            if (nf.is_zero()) continue;
            std::map<Monomial, RatFunc> row(nf.terms().begin(), nf.terms().end());
            elim.insert(std::move(row));
        }
        dims[d] = elim.rank();
    }
    return dims;
}

FreeAlgebraSpec free_spec_from_rules(const Presentation& p,
                                     std::vector<std::vector<long>> multidegree,
                                     std::vector<FreeRelation> extra) {
    FreeAlgebraSpec fa;
    fa.ngens = p.size();
    for (int g = 0; g < p.size(); ++g) fa.degree.push_back(p.gen(g).formal_degree);
    fa.multidegree = std::move(multidegree);
    for (const RewriteRule& r : p.rules) {
        FreeRelation rel;
        rel.terms.push_back({RatFunc(1), {r.left, r.right}});
        for (const auto& [m, c] : r.rhs.terms()) {
            FreeWord w;
            for (const auto& [g, e] : m) {
                if (e < 0)
                    throw std::invalid_argument(
                        "free_spec_from_rules: negative exponent has no free-algebra image");
                for (long k = 0; k < e; ++k) w.push_back(g);
            }
            rel.terms.push_back({-c, w});
        }
        fa.relations.push_back(std::move(rel));
    }
    for (FreeRelation& r : extra) fa.relations.push_back(std::move(r));
    return fa;
}

FreeAlgebraSpec serre_free_spec(const CartanData& cd) {
    FreeAlgebraSpec fa;
    fa.ngens = cd.r;
    fa.degree.assign(cd.r, 1);
    for (int i = 0; i < cd.r; ++i) {
        std::vector<long> md(cd.r, 0);
        md[i] = 1;
        fa.multidegree.push_back(md);
    }
    for (int i = 0; i < cd.r; ++i) {
        for (int j = 0; j < cd.r; ++j) {
            if (i == j || cd.C[i][j] == 0) continue;
            long n = 1 - cd.C[i][j];
            FreeRelation rel;
            for (long k = 0; k <= n; ++k) {
                RatFunc c = q_binomial(n, k, cd.d[i]);
                if (k % 2) c = -c;
                FreeWord w;
                for (long t = 0; t < n - k; ++t) w.push_back(i);
                w.push_back(j);
                for (long t = 0; t < k; ++t) w.push_back(i);
                rel.terms.push_back({c, w});
            }
            fa.relations.push_back(std::move(rel));
        }
    }
    return fa;
}

}  // namespace qma
