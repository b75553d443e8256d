//! The full transformation monoid on three points satisfies the NR system,
//! while its regular subsemigroup of non-permutations does not.

use semieq::classes::nr_counterexample_check;
use semieq::eval::DEFAULT_BUDGET;

fn main() {
    let report = nr_counterexample_check(DEFAULT_BUDGET).expect("within budget");
    println!("T3 satisfies NR:            {}", report.t3_satisfies);
    println!("U satisfies NR:             {}", report.u_satisfies);
    println!("U is regular:               {}", report.u_regular);
    println!("U is a subsemigroup of T3:  {}", report.u_is_subsemigroup);
    println!("233 has no two-sided unit:  {}", report.named_element_fails);
    println!("all such elements of U:     {}", report.failing_elements.join(" "));
    println!("counterexample reproduced:  {}", report.reproduces());
}
