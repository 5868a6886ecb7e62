#include "cpx/heisenberg.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

namespace cpx {

namespace {

int pair_lookup(const std::vector<std::pair<int, int>>& pairs, int a, int b) {
    for (std::size_t k = 0; k < pairs.size(); ++k)
        if (pairs[k].first == a && pairs[k].second == b) return static_cast<int>(k);
    throw std::logic_error("pair_lookup: not found");
}

/// standard Darboux form entries as exact rationals
Rat Jstd(int n, int a, int b) {
    if (b == a + n && a < n) return 1;
    if (a == b + n && b < n) return -1;
    return 0;
}
/// inverse form with J^{ac} J_{bc} = delta: same block matrix
Rat Jup_std(int n, int a, int b) { return Jstd(n, a, b); }

std::vector<std::vector<int>> subsets(int universe, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < universe; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

int subset_index(const std::vector<std::vector<int>>& all, const std::vector<int>& s) {
    auto it = std::lower_bound(all.begin(), all.end(), s);
    if (it == all.end() || *it != s) throw std::logic_error("subset_index: not found");
    return static_cast<int>(it - all.begin());
}

}  // namespace

bool HeisenbergModule::relations_hold() const {
    const int m = 2 * n;
    for (int a = 0; a < m; ++a) {
        if (!((A[a] * Z) - (Z * A[a])).is_zero()) return false;
        for (int b = 0; b < m; ++b) {
            RatMat comm = (A[a] * A[b]) - (A[b] * A[a]);
            RatMat target = Z.scaled(Rat(2) * Jstd(n, a, b));
            if (!(comm - target).is_zero()) return false;
        }
    }
    return true;
}

HeisenbergModule trivial_module(int n) {
    HeisenbergModule M;
    M.n = n;
    M.dim = 1;
    M.A.assign(static_cast<std::size_t>(2 * n), RatMat(1, 1));
    M.Z = RatMat(1, 1);
    M.name = "trivial";
    return M;
}

HeisenbergModule three_slot_module(int n) {
    const int m = 2 * n;
    const int d = m + 2;
    HeisenbergModule M;
    M.n = n;
    M.dim = d;
    M.name = "three-slot";
    M.Z = RatMat(d, d);
    M.Z.at(0, d - 1) = 1;  // sigma' = rho
    for (int a = 0; a < m; ++a) {
        RatMat Aa(d, d);
        Aa.at(0, 1 + a) = -1;  // sigma' = -mu_a
        for (int c = 0; c < m; ++c) {
            Rat j = Jstd(n, a, c);
            if (j != 0) Aa.at(1 + c, d - 1) = j;  // mu'_c = J_ac rho
        }
        M.A.push_back(Aa);
    }
    return M;
}

HeisenbergModule induced_skew_module(int n) {
    const int m = 2 * n;
    const int d = m + 2;  // base fiber
    HeisenbergModule base = three_slot_module(n);

    // pair coordinates on the second skew power
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
    const int P = static_cast<int>(pairs.size());

    auto derivation = [&](const RatMat& B) {
        RatMat out(P, P);
        for (int col = 0; col < P; ++col) {
            auto [i, j] = pairs[col];
            // B(e_i ^ e_j) = (B e_i) ^ e_j + e_i ^ (B e_j)
            for (int k = 0; k < d; ++k) {
                Rat bi = B.at(k, i);
                if (bi != 0 && k != j) {
                    int a = std::min(k, j), b = std::max(k, j);
                    Rat sg = (k < j) ? Rat(1) : Rat(-1);
                    out.at(pair_lookup(pairs, a, b), col) += sg * bi;
                }
                Rat bj = B.at(k, j);
                if (bj != 0 && k != i) {
                    int a = std::min(i, k), b = std::max(i, k);
                    Rat sg = (i < k) ? Rat(1) : Rat(-1);
                    out.at(pair_lookup(pairs, a, b), col) += sg * bj;
                }
            }
        }
        return out;
    };

    // fiber symplectic form and its inverse for the trace functional
    RatMat Om(d, d);
    Om.at(0, d - 1) = 1;
    Om.at(d - 1, 0) = -1;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            Rat v = Jup_std(n, a, b);
            if (v != 0) Om.at(1 + a, 1 + b) = v;
        }
    // OmUp with OmUp^{ik} Om_{jk} = delta^i_j: OmUp = (Om^T)^{-1}
    RatMat OmT(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) OmT.at(i, j) = Om.at(j, i);
    RatMat OmUp = rat_inverse(OmT);

    RatMat trace_row(1, P);
    for (int k = 0; k < P; ++k) {
        auto [i, j] = pairs[k];
        trace_row.at(0, k) = OmUp.at(i, j) - OmUp.at(j, i);
    }
    NullspaceBasis perp = rat_nullspace(trace_row);

    HeisenbergModule M;
    M.n = n;
    M.dim = perp.dim();
    M.name = "induced-skew";

    auto restrict_to_perp = [&](const RatMat& big) {
        RatMat out(M.dim, M.dim);
        for (int col = 0; col < M.dim; ++col) {
            // image of basis vector col
            std::vector<Rat> img(static_cast<std::size_t>(P));
            for (int r = 0; r < P; ++r) {
                Rat acc = 0;
                for (int c = 0; c < P; ++c) {
                    if (big.at(r, c) != 0 && perp.basis[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)] != 0)
                        acc += big.at(r, c) * perp.basis[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
                }
                img[static_cast<std::size_t>(r)] = acc;
            }
            std::vector<Rat> coords = perp.coords_of(img);  // exact invariance check
            for (int r = 0; r < M.dim; ++r) out.at(r, col) = coords[static_cast<std::size_t>(r)];
        }
        return out;
    };

    for (int a = 0; a < m; ++a) M.A.push_back(restrict_to_perp(derivation(base.A[a])));
    M.Z = restrict_to_perp(derivation(base.Z));
    return M;
}

std::vector<long> koszul_cohomology_dims(const HeisenbergModule& M, int top_degree) {
    const int m = 2 * M.n;
    const int hdim = m + 1;  // generators x_0..x_{m-1}, z at index m
    const int V = M.dim;

    auto act = [&](int gen) -> const RatMat& { return gen < m ? M.A[gen] : M.Z; };

    std::vector<std::vector<std::vector<int>>> bases(static_cast<std::size_t>(top_degree) + 2);
    for (int p = 0; p <= top_degree + 1; ++p) bases[static_cast<std::size_t>(p)] = subsets(hdim, p);

    auto build_d = [&](int p) {
        const auto& dom = bases[static_cast<std::size_t>(p)];
        const auto& cod = bases[static_cast<std::size_t>(p) + 1];
        RatMat D(static_cast<int>(cod.size()) * V, static_cast<int>(dom.size()) * V);
        for (std::size_t Ti = 0; Ti < cod.size(); ++Ti) {
            const auto& T = cod[Ti];
            // action terms
            for (std::size_t i = 0; i < T.size(); ++i) {
                std::vector<int> S = T;
                S.erase(S.begin() + static_cast<long>(i));
                int Si = subset_index(dom, S);
                const RatMat& act_m = act(T[i]);
                Rat sg = (i % 2 == 0) ? 1 : -1;
                for (int u = 0; u < V; ++u)
                    for (int v = 0; v < V; ++v)
                        if (act_m.at(u, v) != 0)
                            D.at(static_cast<int>(Ti) * V + u, Si * V + v) += sg * act_m.at(u, v);
            }
            // bracket terms: [x_a, x_b] = 2 J_ab z
            for (std::size_t i = 0; i < T.size(); ++i)
                for (std::size_t j = i + 1; j < T.size(); ++j) {
                    if (T[i] >= m || T[j] >= m) continue;
                    Rat jab = Jstd(M.n, T[i], T[j]);
                    if (jab == 0) continue;
                    std::vector<int> rest = T;
                    rest.erase(rest.begin() + static_cast<long>(j));
                    rest.erase(rest.begin() + static_cast<long>(i));
                    if (std::find(rest.begin(), rest.end(), m) != rest.end()) continue;
                    // omega(z, rest): move z (largest index) to the back
                    std::vector<int> S = rest;
                    S.push_back(m);
                    int Si = subset_index(dom, S);
                    Rat sg = ((i + j) % 2 == 0) ? 1 : -1;
                    if (rest.size() % 2 == 1) sg = -sg;  // z from front to back
                    Rat coef = sg * 2 * jab;
                    for (int u = 0; u < V; ++u)
                        D.at(static_cast<int>(Ti) * V + u, Si * V + u) += coef;
                }
        }
        return D;
    };

    std::vector<RatMat> D;
    for (int p = 0; p <= top_degree; ++p) D.push_back(build_d(p));
    // exact complex check on the lowest composites
    for (int p = 0; p + 1 <= top_degree; ++p)
        if (!(D[static_cast<std::size_t>(p) + 1] * D[static_cast<std::size_t>(p)]).is_zero())
            throw std::logic_error("koszul: d o d != 0");

    std::vector<long> ranks;
    for (auto& Dp : D) ranks.push_back(rat_rank(Dp));
    std::vector<long> H;
    for (int p = 0; p <= top_degree; ++p) {
        long dimC = static_cast<long>(bases[static_cast<std::size_t>(p)].size()) * V;
        long rk = ranks[static_cast<std::size_t>(p)];
        long rk_prev = p > 0 ? ranks[static_cast<std::size_t>(p) - 1] : 0;
        H.push_back(dimC - rk - rk_prev);
    }
    return H;
}

namespace {

/// exact bases of the trace-free 2- and 3-forms on R^{2n}
struct FormBases {
    std::vector<std::pair<int, int>> p2;
    std::vector<std::array<int, 3>> p3;
    NullspaceBasis perp2, perp3;
};

FormBases form_bases(int n) {
    const int m = 2 * n;
    FormBases fb;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) fb.p2.emplace_back(a, b);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) fb.p3.push_back({a, b, c});

    RatMat tr2(1, static_cast<int>(fb.p2.size()));
    for (std::size_t k = 0; k < fb.p2.size(); ++k)
        tr2.at(0, static_cast<int>(k)) = Rat(2) * Jup_std(n, fb.p2[k].first, fb.p2[k].second);
    fb.perp2 = rat_nullspace(tr2);

    // traces of 3-forms: one row per free index c
    auto full3 = [&](const std::vector<Rat>& v, int a, int b, int c) -> Rat {
        if (a == b || b == c || a == c) return 0;
        int s[3] = {a, b, c};
        int sign = 1;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (s[i] > s[j]) {
                    std::swap(s[i], s[j]);
                    sign = -sign;
                }
        for (std::size_t k = 0; k < fb.p3.size(); ++k)
            if (fb.p3[k][0] == s[0] && fb.p3[k][1] == s[1] && fb.p3[k][2] == s[2])
                return Rat(sign) * v[k];
        throw std::logic_error("full3");
    };
    RatMat tr3(m, static_cast<int>(fb.p3.size()));
    for (int c = 0; c < m; ++c) {
        for (std::size_t col = 0; col < fb.p3.size(); ++col) {
            std::vector<Rat> unit(fb.p3.size());
            unit[col] = 1;
            Rat acc = 0;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    Rat j = Jup_std(n, a, b);
                    if (j != 0) acc += j * full3(unit, a, b, c);
                }
            tr3.at(c, static_cast<int>(col)) = acc;
        }
    }
    fb.perp3 = rat_nullspace(tr3);
    return fb;
}

}  // namespace

std::array<long, 4> reduced_space_dims(const HeisenbergModule& M) {
    const int m = 2 * M.n;
    FormBases fb = form_bases(M.n);
    long last = (M.n == 2) ? static_cast<long>(fb.perp2.dim()) * M.dim
                           : static_cast<long>(fb.perp3.dim()) * M.dim;
    return {static_cast<long>(M.dim), static_cast<long>(m) * M.dim,
            static_cast<long>(fb.perp2.dim()) * M.dim, last};
}

std::array<long, 3> reduced_cohomology_dims(const HeisenbergModule& M) {
    const int m = 2 * M.n;
    const int V = M.dim;
    FormBases fb = form_bases(M.n);
    const int P2 = static_cast<int>(fb.p2.size());
    const int Q2 = fb.perp2.dim();

    auto mat_apply = [&](const RatMat& B, const std::vector<Rat>& v) {
        std::vector<Rat> out(static_cast<std::size_t>(B.rows));
        for (int r = 0; r < B.rows; ++r) {
            Rat acc = 0;
            for (int c = 0; c < B.cols; ++c)
                if (B.at(r, c) != 0 && v[static_cast<std::size_t>(c)] != 0)
                    acc += B.at(r, c) * v[static_cast<std::size_t>(c)];
            out[static_cast<std::size_t>(r)] = acc;
        }
        return out;
    };

    // d0: V -> g* (x) V, rows (a, u)
    RatMat D0(m * V, V);
    for (int a = 0; a < m; ++a)
        for (int u = 0; u < V; ++u)
            for (int v = 0; v < V; ++v)
                if (M.A[a].at(u, v) != 0) D0.at(a * V + u, v) = M.A[a].at(u, v);

    // d1: g* (x) V -> perp2 (x) V
    // v_a |-> 1/2 (A_a v_b - A_b v_a) - (1/2n) J^{cd} A_c v_d J_ab
    RatMat D1(Q2 * V, m * V);
    for (int a0 = 0; a0 < m; ++a0)
        for (int vcol = 0; vcol < V; ++vcol) {
            // input: v_{a0} = e_{vcol}
            // full 2-form-valued output in pair coordinates
            std::vector<std::vector<Rat>> out2(static_cast<std::size_t>(P2),
                                               std::vector<Rat>(static_cast<std::size_t>(V)));
            std::vector<Rat> evec(static_cast<std::size_t>(V));
            evec[static_cast<std::size_t>(vcol)] = 1;
            // J^{cd} A_c v_d with v_d = delta_{d,a0} e
            std::vector<Rat> jterm(static_cast<std::size_t>(V));
            for (int c = 0; c < m; ++c) {
                Rat j = Jup_std(M.n, c, a0);
                if (j == 0) continue;
                auto w = mat_apply(M.A[c], evec);
                for (int u = 0; u < V; ++u) jterm[static_cast<std::size_t>(u)] += j * w[static_cast<std::size_t>(u)];
            }
            for (int k = 0; k < P2; ++k) {
                auto [a, b] = fb.p2[k];
                std::vector<Rat> acc(static_cast<std::size_t>(V));
                if (b == a0) {
                    auto w = mat_apply(M.A[a], evec);
                    for (int u = 0; u < V; ++u) acc[static_cast<std::size_t>(u)] += w[static_cast<std::size_t>(u)] / 2;
                }
                if (a == a0) {
                    auto w = mat_apply(M.A[b], evec);
                    for (int u = 0; u < V; ++u) acc[static_cast<std::size_t>(u)] -= w[static_cast<std::size_t>(u)] / 2;
                }
                Rat jab = Jstd(M.n, a, b);
                if (jab != 0)
                    for (int u = 0; u < V; ++u)
                        acc[static_cast<std::size_t>(u)] -=
                            jterm[static_cast<std::size_t>(u)] * jab / (2 * M.n);
                out2[static_cast<std::size_t>(k)] = std::move(acc);
            }
            // express the 2-form part in the trace-free basis, exactly
            for (int u = 0; u < V; ++u) {
                std::vector<Rat> comp(static_cast<std::size_t>(P2));
                for (int k = 0; k < P2; ++k) comp[static_cast<std::size_t>(k)] = out2[static_cast<std::size_t>(k)][static_cast<std::size_t>(u)];
                std::vector<Rat> coords = fb.perp2.coords_of(comp);
                for (int q = 0; q < Q2; ++q)
                    if (coords[static_cast<std::size_t>(q)] != 0)
                        D1.at(q * V + u, a0 * V + vcol) = coords[static_cast<std::size_t>(q)];
            }
        }

    // top differential
    RatMat D2;
    if (M.n == 2) {
        // v_ab |-> J^{cd} A_c (1/2)(A_a v_bd - A_b v_ad) + 3 Z v_ab
        D2 = RatMat(Q2 * V, Q2 * V);
        for (int qcol = 0; qcol < Q2; ++qcol)
            for (int vcol = 0; vcol < V; ++vcol) {
                // input 2-form-valued: v = basis[qcol] (x) e_{vcol}
                auto vfull = [&](int a, int b) -> Rat {
                    if (a == b) return 0;
                    int lo = std::min(a, b), hi = std::max(a, b);
                    for (int k = 0; k < P2; ++k)
                        if (fb.p2[k] == std::make_pair(lo, hi)) {
                            Rat v = fb.perp2.basis[static_cast<std::size_t>(qcol)][static_cast<std::size_t>(k)];
                            return (a < b) ? v : -v;
                        }
                    return 0;
                };
                std::vector<Rat> evec(static_cast<std::size_t>(V));
                evec[static_cast<std::size_t>(vcol)] = 1;
                std::vector<std::vector<Rat>> out2(static_cast<std::size_t>(P2),
                                                   std::vector<Rat>(static_cast<std::size_t>(V)));
                for (int k = 0; k < P2; ++k) {
                    auto [a, b] = fb.p2[k];
                    std::vector<Rat> acc(static_cast<std::size_t>(V));
                    for (int c = 0; c < m; ++c)
                        for (int dd = 0; dd < m; ++dd) {
                            Rat j = Jup_std(M.n, c, dd);
                            if (j == 0) continue;
                            // (1/2)(A_a v_bd - A_b v_ad) with v_xy = vfull(x,y) e
                            Rat vb = vfull(b, dd), va = vfull(a, dd);
                            if (vb != 0) {
                                auto w = mat_apply(M.A[c], mat_apply(M.A[a], evec));
                                for (int u = 0; u < V; ++u)
                                    acc[static_cast<std::size_t>(u)] += j * vb * w[static_cast<std::size_t>(u)] / 2;
                            }
                            if (va != 0) {
                                auto w = mat_apply(M.A[c], mat_apply(M.A[b], evec));
                                for (int u = 0; u < V; ++u)
                                    acc[static_cast<std::size_t>(u)] -= j * va * w[static_cast<std::size_t>(u)] / 2;
                            }
                        }
                    Rat vab = vfull(a, b);
                    if (vab != 0) {
                        auto w = mat_apply(M.Z, evec);
                        for (int u = 0; u < V; ++u)
                            acc[static_cast<std::size_t>(u)] += 3 * vab * w[static_cast<std::size_t>(u)];
                    }
                    out2[static_cast<std::size_t>(k)] = std::move(acc);
                }
                for (int u = 0; u < V; ++u) {
                    std::vector<Rat> comp(static_cast<std::size_t>(P2));
                    for (int k = 0; k < P2; ++k) comp[static_cast<std::size_t>(k)] = out2[static_cast<std::size_t>(k)][static_cast<std::size_t>(u)];
                    std::vector<Rat> coords = fb.perp2.coords_of(comp);
                    for (int q = 0; q < Q2; ++q)
                        if (coords[static_cast<std::size_t>(q)] != 0)
                            D2.at(q * V + u, qcol * V + vcol) = coords[static_cast<std::size_t>(q)];
                }
            }
    } else {
        // v_ab |-> avg cycle of A_a v_bc - (1/(n-1)) J^{de} A_d v_e[a J_bc]
        const int Q3 = fb.perp3.dim();
        const int P3 = static_cast<int>(fb.p3.size());
        D2 = RatMat(Q3 * V, Q2 * V);
        for (int qcol = 0; qcol < Q2; ++qcol)
            for (int vcol = 0; vcol < V; ++vcol) {
                auto vfull = [&](int a, int b) -> Rat {
                    if (a == b) return 0;
                    int lo = std::min(a, b), hi = std::max(a, b);
                    for (int k = 0; k < P2; ++k)
                        if (fb.p2[k] == std::make_pair(lo, hi)) {
                            Rat v = fb.perp2.basis[static_cast<std::size_t>(qcol)][static_cast<std::size_t>(k)];
                            return (a < b) ? v : -v;
                        }
                    return 0;
                };
                std::vector<Rat> evec(static_cast<std::size_t>(V));
                evec[static_cast<std::size_t>(vcol)] = 1;
                // w_a = J^{de} A_d v_{ea}
                std::vector<std::vector<Rat>> wvec(static_cast<std::size_t>(m),
                                                   std::vector<Rat>(static_cast<std::size_t>(V)));
                for (int a = 0; a < m; ++a)
                    for (int dd = 0; dd < m; ++dd)
                        for (int e = 0; e < m; ++e) {
                            Rat j = Jup_std(M.n, dd, e);
                            Rat ve = vfull(e, a);
                            if (j == 0 || ve == 0) continue;
                            auto w = mat_apply(M.A[dd], evec);
                            for (int u = 0; u < V; ++u)
                                wvec[static_cast<std::size_t>(a)][static_cast<std::size_t>(u)] += j * ve * w[static_cast<std::size_t>(u)];
                        }
                std::vector<std::vector<Rat>> out3(static_cast<std::size_t>(P3),
                                                   std::vector<Rat>(static_cast<std::size_t>(V)));
                for (int k = 0; k < P3; ++k) {
                    auto [a, b, c] = fb.p3[k];
                    std::vector<Rat> acc(static_cast<std::size_t>(V));
                    const int tri[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
                    for (auto& t : tri) {
                        Rat vbc = vfull(t[1], t[2]);
                        if (vbc != 0) {
                            auto w = mat_apply(M.A[t[0]], evec);
                            for (int u = 0; u < V; ++u)
                                acc[static_cast<std::size_t>(u)] += vbc * w[static_cast<std::size_t>(u)] / 3;
                        }
                        Rat jbc = Jstd(M.n, t[1], t[2]);
                        if (jbc != 0)
                            for (int u = 0; u < V; ++u)
                                acc[static_cast<std::size_t>(u)] -=
                                    jbc * wvec[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(u)] / (3 * (M.n - 1));
                    }
                    out3[static_cast<std::size_t>(k)] = std::move(acc);
                }
                for (int u = 0; u < V; ++u) {
                    std::vector<Rat> comp(static_cast<std::size_t>(P3));
                    for (int k = 0; k < P3; ++k) comp[static_cast<std::size_t>(k)] = out3[static_cast<std::size_t>(k)][static_cast<std::size_t>(u)];
                    std::vector<Rat> coords = fb.perp3.coords_of(comp);
                    for (int q = 0; q < Q3; ++q)
                        if (coords[static_cast<std::size_t>(q)] != 0)
                            D2.at(q * V + u, qcol * V + vcol) = coords[static_cast<std::size_t>(q)];
                }
            }
    }

    // exact complex property
    if (!(D1 * D0).is_zero()) throw std::logic_error("reduced complex: d1 d0 != 0");
    if (!(D2 * D1).is_zero()) throw std::logic_error("reduced complex: d2 d1 != 0");

    long r0 = rat_rank(D0), r1 = rat_rank(D1), r2 = rat_rank(D2);
    long h0 = V - r0;
    long h1 = static_cast<long>(m) * V - r1 - r0;
    long h2 = static_cast<long>(Q2) * V - r2 - r1;
    return {h0, h1, h2};
}

long weyl_dim_sp(const std::vector<long>& labels) {
    const int n = static_cast<int>(labels.size());
    std::vector<Rat> lam(static_cast<std::size_t>(n)), rho(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        long s = 0;
        for (int k = j; k < n; ++k) s += labels[static_cast<std::size_t>(k)];
        lam[static_cast<std::size_t>(j)] = s;
        rho[static_cast<std::size_t>(j)] = n - j;
    }
    Rat dim = 1;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            dim *= (lam[i] + rho[i] - lam[j] - rho[j]) / (rho[i] - rho[j]);
            dim *= (lam[i] + rho[i] + lam[j] + rho[j]) / (rho[i] + rho[j]);
        }
        dim *= (lam[i] + rho[i]) / rho[i];
    }
    if (denominator(dim) != 1) throw std::logic_error("weyl_dim_sp: non-integer result");
    return static_cast<long>(numerator(dim).convert_to<long long>());
}

}  // namespace cpx
