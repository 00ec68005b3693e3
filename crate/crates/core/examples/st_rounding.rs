//! Slot construction and matching on a fractional solution.

use balance_forge::lp::{build_relaxation, sanitize_solution, solve_lp, RelaxationSpec};
use balance_forge::lab::{gen_random, Family, Sizes};
use balance_forge::model::{evaluate, scale_to_target};
use balance_forge::oracle::{min_makespan, DEFAULT_CAP};
use balance_forge::st::{build_slots, st_round};

fn main() {
    let inst = (0..)
        .map(|seed| gen_random(Family::Gap, seed, Sizes { max_vertices: 4, max_edges: 6 }).unwrap())
        .find(|i| i.num_edges() >= 5 && i.num_vertices() >= 3)
        .unwrap();
    let t = min_makespan(&inst, DEFAULT_CAP).unwrap();
    let scaled = scale_to_target(&inst, t).unwrap();
    let lp = build_relaxation(&scaled, RelaxationSpec::plain()).unwrap();
    let raw = solve_lp(&lp).unwrap();
    let x = sanitize_solution(&scaled, &raw);

    let table = build_slots(&scaled, &x);
    for (u, slots) in table.slots.iter().enumerate() {
        for (s, slot) in slots.iter().enumerate() {
            let fills: Vec<String> = slot.fills.iter().map(|(e, f)| format!("e{e}:{f:.3}")).collect();
            println!("{}[{s}] {}", inst.vertices[u], fills.join(" "));
        }
    }
    let o = st_round(&scaled, &x).unwrap();
    let ev = evaluate(&inst, &o).unwrap();
    println!("T {t:.2}: makespan {:.2} (<= {:.2}), cost {:.2} (lp {:.2})", ev.makespan, 2.0 * t, ev.total_cost, raw.objective_value);
}
