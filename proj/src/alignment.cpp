#include "alignment.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace strsat::detail {

namespace {

struct Key {
    std::uint32_t i, a, j, b;
    friend auto operator<=>(const Key&, const Key&) = default;
};

class Product {
public:
    Product(const std::vector<Nfa>& left, const std::vector<Nfa>& right) : left_(left), right_(right) {
        for (auto& x : left_) x = nfa::with_single_initial(x);
        for (auto& x : right_) x = nfa::with_single_initial(x);
        alphabet_ = left_.front().alphabet_size();
    }

    bool build() {
        for (const auto& x : left_)
            if (x.initial().empty()) return false;
        for (const auto& x : right_)
            if (x.initial().empty()) return false;
        id({0, left_[0].initial()[0], 0, right_[0].initial()[0]});
        for (std::size_t s = 0; s < keys_.size(); ++s) expand(s);
        // Backward closure from accepting states.
        std::vector<std::vector<std::size_t>> rev(keys_.size());
        for (std::size_t s = 0; s < keys_.size(); ++s) {
            for (const auto& [sym, t] : moves_[s]) rev[t].push_back(s);
            for (std::size_t t : borders_[s]) rev[t].push_back(s);
        }
        useful_.assign(keys_.size(), false);
        std::vector<std::size_t> stack;
        for (std::size_t s = 0; s < keys_.size(); ++s)
            if (accepting(s)) {
                useful_[s] = true;
                stack.push_back(s);
            }
        while (!stack.empty()) {
            std::size_t s = stack.back();
            stack.pop_back();
            for (std::size_t p : rev[s])
                if (!useful_[p]) {
                    useful_[p] = true;
                    stack.push_back(p);
                }
        }
        return useful_[0];
    }

    bool accepting(std::size_t s) const {
        const Key& k = keys_[s];
        return k.i + 1 == left_.size() && k.j + 1 == right_.size() && left_[k.i].is_final(k.a) &&
               right_[k.j].is_final(k.b);
    }

    const Key& key(std::size_t s) const { return keys_[s]; }
    const std::vector<std::pair<Symbol, std::size_t>>& moves(std::size_t s) const { return moves_[s]; }
    const std::vector<std::size_t>& borders(std::size_t s) const { return borders_[s]; }
    bool useful(std::size_t s) const { return useful_[s]; }
    std::size_t alphabet() const { return alphabet_; }
    std::size_t last_phase_i() const { return left_.size() - 1; }
    std::size_t last_phase_j() const { return right_.size() - 1; }

private:
    std::size_t id(const Key& k) {
        auto [it, inserted] = index_.try_emplace(k, keys_.size());
        if (inserted) {
            keys_.push_back(k);
            moves_.emplace_back();
            borders_.emplace_back();
        }
        return it->second;
    }

    void expand(std::size_t s) {
        Key k = keys_[s];
        const Nfa& A = left_[k.i];
        const Nfa& B = right_[k.j];
        const auto& ma = A.moves(k.a);
        const auto& mb = B.moves(k.b);
        std::vector<std::pair<Symbol, std::size_t>> out;
        std::size_t p = 0, q = 0;
        while (p < ma.size() && q < mb.size()) {
            if (ma[p].symbol < mb[q].symbol) {
                ++p;
            } else if (mb[q].symbol < ma[p].symbol) {
                ++q;
            } else {
                Symbol sym = ma[p].symbol;
                std::size_t p_end = p, q_end = q;
                while (p_end < ma.size() && ma[p_end].symbol == sym) ++p_end;
                while (q_end < mb.size() && mb[q_end].symbol == sym) ++q_end;
                for (std::size_t x = p; x < p_end; ++x)
                    for (std::size_t y = q; y < q_end; ++y)
                        out.emplace_back(sym, id({k.i, ma[x].target, k.j, mb[y].target}));
                p = p_end;
                q = q_end;
            }
        }
        moves_[s] = std::move(out);
        std::vector<std::size_t> bs;
        if (A.is_final(k.a) && k.i + 1 < left_.size())
            bs.push_back(id({k.i + 1, left_[k.i + 1].initial()[0], k.j, k.b}));
        if (B.is_final(k.b) && k.j + 1 < right_.size())
            bs.push_back(id({k.i, k.a, k.j + 1, right_[k.j + 1].initial()[0]}));
        borders_[s] = std::move(bs);
    }

    std::vector<Nfa> left_, right_;
    std::size_t alphabet_ = 0;
    std::map<Key, std::size_t> index_;
    std::vector<Key> keys_;
    std::vector<std::vector<std::pair<Symbol, std::size_t>>> moves_;
    std::vector<std::vector<std::size_t>> borders_;
    std::vector<bool> useful_;
};

class Enumerator {
public:
    Enumerator(const Product& p, std::size_t cap) : p_(p), cap_(cap) {}

    std::vector<Alignment> run(bool& truncated) {
        std::vector<Block> path;
        visit(0, path);
        truncated = truncated_;
        std::vector<Alignment> out;
        for (const auto& blocks : found_) {
            Alignment al;
            for (const auto& b : blocks) {
                Segment seg{p_.key(b.entry).i, p_.key(b.entry).j, segment(b)};
                al.states += seg.nfa.num_states();
                al.segments.push_back(std::move(seg));
            }
            out.push_back(std::move(al));
        }
        std::stable_sort(out.begin(), out.end(),
                         [](const Alignment& a, const Alignment& b) { return a.states < b.states; });
        return out;
    }

private:
    struct Block {
        std::size_t entry;
        std::vector<std::size_t> exits;
    };

    bool same_phase(std::size_t s, std::size_t t) const {
        return p_.key(s).i == p_.key(t).i && p_.key(s).j == p_.key(t).j;
    }

    std::vector<std::size_t> closure(std::size_t entry) const {
        std::vector<std::size_t> seen{entry};
        std::map<std::size_t, bool> mark{{entry, true}};
        for (std::size_t k = 0; k < seen.size(); ++k)
            for (const auto& [sym, t] : p_.moves(seen[k]))
                if (p_.useful(t) && !mark.count(t)) {
                    mark[t] = true;
                    seen.push_back(t);
                }
        std::sort(seen.begin(), seen.end());
        return seen;
    }

    void visit(std::size_t entry, std::vector<Block>& path) {
        if (truncated_) return;
        const Key& k = p_.key(entry);
        auto region = closure(entry);
        if (k.i == p_.last_phase_i() && k.j == p_.last_phase_j()) {
            Block b{entry, {}};
            for (std::size_t s : region)
                if (p_.accepting(s)) b.exits.push_back(s);
            if (b.exits.empty()) return;
            if (found_.size() >= cap_) {
                truncated_ = true;
                return;
            }
            path.push_back(std::move(b));
            found_.push_back(path);
            path.pop_back();
            return;
        }
        for (std::size_t s : region) {
            for (std::size_t t : p_.borders(s)) {
                if (!p_.useful(t)) continue;
                path.push_back(Block{entry, {s}});
                visit(t, path);
                path.pop_back();
                if (truncated_) return;
            }
        }
    }

    Nfa segment(const Block& b) const {
        auto region = closure(b.entry);
        std::map<std::size_t, State> local;
        // Keep the states of the region that reach an exit.
        std::map<std::size_t, std::vector<std::size_t>> rev;
        for (std::size_t s : region)
            for (const auto& [sym, t] : p_.moves(s)) rev[t].push_back(s);
        std::map<std::size_t, bool> live;
        std::vector<std::size_t> stack(b.exits.begin(), b.exits.end());
        for (std::size_t e : b.exits) live[e] = true;
        while (!stack.empty()) {
            std::size_t s = stack.back();
            stack.pop_back();
            for (std::size_t q : rev[s])
                if (!live.count(q)) {
                    live[q] = true;
                    stack.push_back(q);
                }
        }
        Nfa out(p_.alphabet());
        for (std::size_t s : region)
            if (live.count(s)) local[s] = out.add_state();
        if (!local.count(b.entry)) return out;
        out.add_initial(local[b.entry]);
        for (std::size_t e : b.exits) out.set_final(local[e]);
        for (const auto& [s, ls] : local)
            for (const auto& [sym, t] : p_.moves(s)) {
                auto it = local.find(t);
                if (it != local.end()) out.add_transition(ls, sym, it->second);
            }
        return nfa::reduce(out);
    }

    const Product& p_;
    std::size_t cap_;
    bool truncated_ = false;
    std::vector<std::vector<Block>> found_;
};

}  // namespace

std::vector<Alignment> align(const std::vector<Nfa>& left, const std::vector<Nfa>& right, std::size_t cap,
                             bool& truncated) {
    truncated = false;
    if (left.empty() || right.empty()) return {};
    Product p(left, right);
    if (!p.build()) return {};
    return Enumerator(p, cap).run(truncated);
}

}  // namespace strsat::detail
