#pragma once

namespace pqml {

template <class Visit>
void for_each_valuation(const std::vector<Var>& vars, const AdmissibleFamily& family, Visit&& visit) {
  std::vector<WorldSet> members;
  if (!vars.empty()) members = family.materialize();
  std::vector<std::size_t> digit(vars.size(), 0);
  Valuation v;
  for (Var p : vars) v.set(p, members.front());
  while (true) {
    if (!visit(static_cast<const Valuation&>(v))) return;
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (++digit[i] < members.size()) {
        v.set(vars[i], members[digit[i]]);
        break;
      }
      digit[i] = 0;
      v.set(vars[i], members.front());
      if (i == 0) return;
    }
    if (vars.empty()) return;
  }
}

}  // namespace pqml
