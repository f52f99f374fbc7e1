#pragma once

namespace wb {

// Harness self-test: while set, the G-indexed necklace product uses the
// negated constant p_E^E(E). Every suite that touches that product fails.
void set_fault_injection(bool on);
bool fault_injection();

} // namespace wb
