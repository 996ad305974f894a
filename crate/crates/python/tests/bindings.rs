use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module(code: &std::ffi::CStr) {
    Python::initialize();
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(prym::prym)(py);
        let sys = py.import("sys").unwrap();
        sys.getattr("modules").unwrap().set_item("prym", module).unwrap();
        let globals = PyDict::new(py);
        if let Err(e) = py.run(code, Some(&globals), None) {
            e.display(py);
            panic!("python assertion failed");
        }
    });
}

#[test]
fn permutations() {
    with_module(
        c"
import prym
p = prym.Permutation([2, 1, 3, 4])
q = prym.Permutation.from_cycles(4, [[1, 2, 3, 4]])
assert prym.compose(p, q) == p * q
assert (p * q)(1) == p(q(1)) == 1
assert q.cycle_type() == [4]
assert (q * q.inverse()).is_identity()
assert prym.orbits(4, [p, q]) == [[1, 2, 3, 4]]
assert prym.orbits(6, [q.induced(2)]) == [[1, 3, 4, 6], [2, 5]]
assert prym.colex_unrank(2, prym.colex_rank([4, 2])) == [2, 4]
try:
    prym.Permutation([1, 1])
except prym.PrymError:
    pass
else:
    raise AssertionError('duplicate images accepted')
",
    );
}

#[test]
fn identities_and_reports() {
    with_module(
        c"
import json
import prym
d = prym.subset_correspondence(5)
assert (d.size, d.bidegree) == (21, 10)
assert all(sum(row) == 10 for row in d.matrix())
ident = d.identity()
assert (ident['a'], ident['b'], ident['c'], ident['q']) == ('4', '-3', '6', 5)
assert prym.grid_correspondence(4).identity()['q'] is None
assert prym.riemann_hurwitz_genus(9, 0, 30) == 7
r = prym.hyperelliptic(5, model='paper')
assert r.verified and r.q == 3 and r.genus == 13 and r.dim_p == '4'
assert json.loads(r.to_json()) == r.to_dict()
n4 = prym.pn_case(4, 1)
assert n4.to_dict()['claimed_genus']['dim_p_with_claimed'] == '3/2'
again = prym.run_scenario(json.dumps(n4.to_dict()['scenario']))
assert again.to_json() == n4.to_json()
try:
    prym.riemann_hurwitz_genus(4, 0, 5)
except ValueError as e:
    assert 'parity' in str(e)
else:
    raise AssertionError('odd w accepted')
",
    );
}
