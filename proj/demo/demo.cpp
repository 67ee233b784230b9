// Walks through the diagonal Z/2 action on K[X,Y]: its subgroup data, a
// constructed valuation, the invariant semigroup and the splitting index.

#include <vsg/vsg.hpp>

#include <iostream>

int main() {
    using namespace vsg;
    auto h = validate_params(2, 2, 1, 1, 2, 1);
    auto ctx = RootContext::make(2, 2);
    std::cout << to_string(h) << ", order " << subgroup_order(h) << "\n";

    auto tr = construct_valuation_tgt1(h, ctx, 3);
    std::cout << "gammas:";
    for (const auto& g : tr.seq.gammas) std::cout << " " << g;
    std::cout << "\n";
    for (std::size_t l = 2; l <= tr.gs.top(); ++l) std::cout << "Q_" << l << " = " << tr.gs.recursion_string(l - 1) << "\n";

    auto slice = invariant_semigroup_slice(h, ctx, tr.seq, Rational(4));
    std::cout << "invariant values <= 4:";
    for (const auto& e : slice.entries) std::cout << " " << e.value;
    std::cout << "\n";

    auto dec = decide_finite_generation(h, ctx, tr.seq, tr.depth);
    std::cout << "verdict: " << to_string(dec.verdict) << "\n";

    auto split = splitting_report(h, ctx, tr.seq, 2);
    std::cout << "e = " << split.e_truncated << " of MNt = " << split.MNt << (split.certified ? ", certified\n" : "\n");
}
