//! Geometric semantics of a PV program.
//!
//! Process `i` moves along coordinate `i`. It holds semaphore `s` on its
//! busy area `B_s`, a union of intervals `[x_k, y_k[` opened by a `P(s)`
//! and closed by the next `V(s)`. A point is forbidden when, for some `s`
//! of arity `α`, at least `α` coordinates lie in their busy areas. The state
//! space is the complement of the forbidden points in `[0,∞[ᴺ`.

use crate::geometry::{maximal_antichain, Area, Cube, Interval};
use crate::pv::{Op, Process, Program};
use crate::Exec;

/// Disjoint, increasing intervals where a process holds one semaphore.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BusyArea(Vec<Interval>);

impl BusyArea {
    pub fn intervals(&self) -> &[Interval] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, t: u32) -> bool {
        self.0.iter().any(|i| i.contains_point(t))
    }
}

/// `B_s(π)`: with `y₋₁ = 0`, `x_k` is the first `P(s)` after `y_{k-1}` and
/// `y_k` the first `V(s)` after `x_k`, a missing instruction giving `∞`.
/// Extra `P(s)` while holding and `V(s)` while not holding are skipped.
pub fn busy_intervals(process: &Process, semaphore: &str) -> BusyArea {
    let find_after = |start: usize, op: Op| {
        (start + 1..=process.len())
            .find(|&n| process.at(n).is_some_and(|i| i.op == op && i.semaphore == semaphore))
    };
    let mut intervals = Vec::new();
    let mut y = 0;
    while let Some(x) = find_after(y, Op::P) {
        match find_after(x, Op::V) {
            Some(next_y) => {
                intervals.push(Interval::finite(x as u32, next_y as u32));
                y = next_y;
            }
            None => {
                intervals.push(Interval::from(x as u32));
                break;
            }
        }
    }
    BusyArea(intervals)
}

/// `F_s` for one semaphore of arity `arity`, as a list of cubes.
///
/// Enumerates the subsets of exactly `arity` processes with a non-empty busy
/// area and, for each, every choice of one busy interval per member. Larger
/// subsets only give cubes dominated by these.
pub fn semaphore_forbidden(program: &Program, semaphore: &str, arity: u32) -> Vec<Cube> {
    let n = program.len();
    let busy: Vec<(usize, BusyArea)> = program
        .processes()
        .iter()
        .enumerate()
        .map(|(i, p)| (i, busy_intervals(p, semaphore)))
        .filter(|(_, b)| !b.is_empty())
        .collect();
    let arity = arity as usize;
    let mut cubes = Vec::new();
    if busy.len() < arity {
        return cubes;
    }
    for members in combinations(busy.len(), arity) {
        // Odometer over the busy-interval choice of every member.
        let mut choice = vec![0usize; arity];
        loop {
            let mut cube = vec![Interval::full(); n];
            for (slot, &m) in members.iter().enumerate() {
                let (coord, area) = &busy[m];
                cube[*coord] = area.0[choice[slot]];
            }
            cubes.push(Cube::new(cube));

            let mut slot = 0;
            while slot < arity {
                choice[slot] += 1;
                if choice[slot] < busy[members[slot]].1 .0.len() {
                    break;
                }
                choice[slot] = 0;
                slot += 1;
            }
            if slot == arity {
                break;
            }
        }
    }
    cubes
}

/// `F = ⋃_s F_s`, with cubes contained in other cubes removed.
pub fn forbidden_area(program: &Program) -> Vec<Cube> {
    forbidden_area_with(program, Exec::default())
}

pub fn forbidden_area_with(program: &Program, exec: Exec) -> Vec<Cube> {
    let semaphores: Vec<(&String, &u32)> = program.semaphores().iter().collect();
    let cubes = exec.flat_map(&semaphores, |(s, &arity)| semaphore_forbidden(program, s, arity));
    maximal_antichain(cubes, exec)
}

/// The geometric model `[0,∞[ᴺ \ F` as a canonical area.
pub fn state_space(program: &Program) -> Area {
    state_space_with(program, Exec::default())
}

pub fn state_space_with(program: &Program, exec: Exec) -> Area {
    let forbidden = forbidden_area_with(program, exec);
    Area::complement_of_with(program.len(), &forbidden, exec).expect("forbidden cubes have dimension N")
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        let Some(pos) = (0..k).rev().find(|&i| current[i] < n - k + i) else {
            return out;
        };
        current[pos] += 1;
        for j in pos + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pv::{gen_sigma, parse_program, Instruction};

    fn proc_of(text: &str) -> Process {
        let body = text
            .split('.')
            .map(|i| {
                let (op, rest) = i.split_at(1);
                let s = rest.trim_matches(|c| c == '(' || c == ')');
                if op == "P" {
                    Instruction::p(s)
                } else {
                    Instruction::v(s)
                }
            })
            .collect();
        Process::new("p", body)
    }

    fn texts(cubes: &[Cube]) -> Vec<String> {
        cubes.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn busy_interval_examples() {
        assert_eq!(busy_intervals(&proc_of("P(a).V(a)"), "a").intervals(), [Interval::finite(1, 2)]);
        assert!(busy_intervals(&proc_of("P(b).V(b)"), "a").is_empty());
        // x₀ = 1, y₀ = 3, x₁ = ∞
        assert_eq!(busy_intervals(&proc_of("P(a).P(a).V(a).V(a)"), "a").intervals(), [Interval::finite(1, 3)]);
        // x₁ = 3, y₁ = ∞
        assert_eq!(
            busy_intervals(&proc_of("P(a).V(a).P(a)"), "a").intervals(),
            [Interval::finite(1, 2), Interval::from(3)]
        );
        // a V before any P is skipped
        assert_eq!(busy_intervals(&proc_of("V(a).P(a).V(a)"), "a").intervals(), [Interval::finite(2, 3)]);
        assert!(busy_intervals(&Process::new("e", vec![]), "a").is_empty());
    }

    #[test]
    fn swiss_flag_forbidden_area() {
        let prog = parse_program(
            "sem a 2\nsem b 2\nproc p1 = P(a).P(b).V(b).V(a)\nproc p2 = P(b).P(a).V(a).V(b)",
        )
        .unwrap();
        assert_eq!(texts(&forbidden_area(&prog)), ["[1,4[*[2,3[", "[2,3[*[1,4["]);
    }

    #[test]
    fn semaphore_c_is_inside_mutex_a() {
        let prog = parse_program(
            "sem a 2\nsem c 3\nproc p1 = P(a).P(c).V(c).V(a)\nproc p2 = P(c).V(c)\nproc p3 = P(a).P(c).V(c).V(a)",
        )
        .unwrap();
        let f_c = semaphore_forbidden(&prog, "c", 3);
        assert_eq!(texts(&f_c), ["[2,3[*[1,2[*[2,3["]);
        let f_a = semaphore_forbidden(&prog, "a", 2);
        assert_eq!(texts(&f_a), ["[1,4[*[0,-[*[1,4["]);
        assert!(f_a[0].covers(&f_c[0]));
        assert_eq!(forbidden_area(&prog), f_a);
    }

    #[test]
    fn arity_above_process_count_forbids_nothing() {
        let prog = parse_program("sem s 4\nproc p = P(s).V(s)\nproc q = P(s).V(s)").unwrap();
        assert!(semaphore_forbidden(&prog, "s", 4).is_empty());
        assert_eq!(state_space(&prog), Area::full(2));
    }

    #[test]
    fn several_busy_intervals_distribute() {
        let prog = parse_program("sem a 2\nproc p = P(a).V(a).P(a).V(a)\nproc q = P(a).V(a)").unwrap();
        assert_eq!(texts(&forbidden_area(&prog)), ["[1,2[*[1,2[", "[3,4[*[1,2["]);
    }

    #[test]
    fn two_mutex_users() {
        let prog = parse_program("sem a 2\nproc p = P(a).V(a)\nproc q = P(a).V(a)").unwrap();
        let area = state_space(&prog);
        assert_eq!(
            texts(area.cubes()),
            ["[0,1[*[0,-[", "[0,-[*[0,1[", "[0,-[*[2,-[", "[2,-[*[0,-["]
        );
    }

    #[test]
    fn empty_program_is_the_unit() {
        assert_eq!(state_space(&Program::default()), Area::unit());
    }

    #[test]
    fn sigma_forbidden_area_reduces_to_the_mutexes() {
        let prog = gen_sigma(&[2, 2], false).unwrap();
        assert_eq!(
            texts(&forbidden_area(&prog)),
            ["[0,-[*[1,4[*[0,-[*[1,4[", "[1,4[*[0,-[*[1,4[*[0,-["]
        );
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
