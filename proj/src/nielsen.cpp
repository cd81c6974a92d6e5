#include "orbfold/nielsen.hpp"

// Explicit instantiations of the search for the two oracles used by the CLI
// and the test harness.

namespace orbfold {

template SearchResult equivalent_bounded<FpcOracle>(const FpcOracle&, const Tuple<FpcOracle>&,
                                                    const Tuple<FpcOracle>&, SearchLimits);
template SearchResult equivalent_bounded<Pi1Oracle>(const Pi1Oracle&, const Tuple<Pi1Oracle>&,
                                                    const Tuple<Pi1Oracle>&, SearchLimits);
template SearchResult reducible_witness<FpcOracle>(const FpcOracle&, const Tuple<FpcOracle>&,
                                                   SearchLimits);
template SearchResult reducible_witness<Pi1Oracle>(const Pi1Oracle&, const Tuple<Pi1Oracle>&,
                                                   SearchLimits);

}  // namespace orbfold
