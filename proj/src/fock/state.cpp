#include "qse/fock/state.hpp"

namespace qse {

template class BasicSingleModeState<double>;
template class BasicTwoModeState<double>;

}  // namespace qse
