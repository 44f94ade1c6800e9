//! PV programs: data model, text format and benchmark generators.
//!
//! The file format is line oriented:
//!
//! ```text
//! # comment
//! sem a 2
//! sem c 3
//! proc p1 = P(a).P(c).V(c).V(a)
//! proc p2 = P(c).V(c)
//! ```
//!
//! `sem <name> <arity>` declares a semaphore that at most `arity - 1`
//! processes may hold at once (arity 2 is a mutex). Processes are numbered
//! in declaration order; process `i` owns coordinate `i` of the model.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    /// Take one occurrence of the semaphore.
    P,
    /// Release it.
    V,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instruction {
    pub op: Op,
    pub semaphore: String,
}

impl Instruction {
    pub fn p(semaphore: impl Into<String>) -> Self {
        Instruction { op: Op::P, semaphore: semaphore.into() }
    }

    pub fn v(semaphore: impl Into<String>) -> Self {
        Instruction { op: Op::V, semaphore: semaphore.into() }
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.op {
            Op::P => "P",
            Op::V => "V",
        };
        write!(f, "{op}({})", self.semaphore)
    }
}

/// A named sequence of instructions. Position `n` (1-based) of the process
/// is `body[n - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Process {
    pub name: String,
    pub body: Vec<Instruction>,
}

impl Process {
    pub fn new(name: impl Into<String>, body: Vec<Instruction>) -> Self {
        Process { name: name.into(), body }
    }

    /// `π(n)` for `1 ≤ n ≤ len`.
    pub fn at(&self, n: usize) -> Option<&Instruction> {
        n.checked_sub(1).and_then(|k| self.body.get(k))
    }

    pub fn len(&self) -> usize {
        self.body.len()
    }

    pub fn is_empty(&self) -> bool {
        self.body.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    semaphores: BTreeMap<String, u32>,
    processes: Vec<Process>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("semaphore {name} has arity {arity}, arity must be at least 2")]
    Arity { name: String, arity: u32 },
    #[error("semaphore {0} declared twice")]
    DuplicateSemaphore(String),
    #[error("process {0} declared twice")]
    DuplicateProcess(String),
    #[error("process {process} uses undeclared semaphore {semaphore}")]
    UndeclaredSemaphore { process: String, semaphore: String },
    #[error("invalid generator arguments: {0}")]
    Generator(String),
}

impl Program {
    pub fn new(semaphores: BTreeMap<String, u32>, processes: Vec<Process>) -> Result<Self, ProgramError> {
        for (name, &arity) in &semaphores {
            if arity < 2 {
                return Err(ProgramError::Arity { name: name.clone(), arity });
            }
        }
        let mut names = HashSet::new();
        for p in &processes {
            if !names.insert(p.name.as_str()) {
                return Err(ProgramError::DuplicateProcess(p.name.clone()));
            }
            if let Some(i) = p.body.iter().find(|i| !semaphores.contains_key(&i.semaphore)) {
                return Err(ProgramError::UndeclaredSemaphore {
                    process: p.name.clone(),
                    semaphore: i.semaphore.clone(),
                });
            }
        }
        Ok(Program { semaphores, processes })
    }

    pub fn semaphores(&self) -> &BTreeMap<String, u32> {
        &self.semaphores
    }

    pub fn arity(&self, semaphore: &str) -> Option<u32> {
        self.semaphores.get(semaphore).copied()
    }

    pub fn processes(&self) -> &[Process] {
        &self.processes
    }

    /// Number of processes, i.e. the dimension of the model.
    pub fn len(&self) -> usize {
        self.processes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.processes.is_empty()
    }

    pub fn parse(text: &str) -> Result<Program, ParseError> {
        parse_program(text)
    }
}

impl fmt::Display for Program {
    /// Renders the program in the file format accepted by [`parse_program`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, arity) in &self.semaphores {
            writeln!(f, "sem {name} {arity}")?;
        }
        for p in &self.processes {
            write!(f, "proc {} =", p.name)?;
            for (k, i) in p.body.iter().enumerate() {
                f.write_str(if k == 0 { " " } else { "." })?;
                write!(f, "{i}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unknown declaration {0:?}")]
    UnknownDeclaration(String),
    #[error(transparent)]
    Program(#[from] ProgramError),
}

/// Cursor over one line; columns are 1-based character positions.
struct Line<'a> {
    number: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Line<'a> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.number, column: self.text[..self.pos].chars().count() + 1, kind }
    }

    fn expected(&self, what: &'static str) -> ParseError {
        self.error(ParseErrorKind::Expected(what))
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.expected(what))
        }
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let first_ok = rest.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
        if !first_ok {
            return Err(self.expected("identifier"));
        }
        let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        self.pos += len;
        Ok(&rest[..len])
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let value = rest[..len].parse().map_err(|_| self.expected("arity"))?;
        self.pos += len;
        Ok(value)
    }

    fn instruction(&mut self) -> Result<(Instruction, usize), ParseError> {
        self.skip_ws();
        let column = self.pos;
        let op = match self.ident()? {
            "P" => Op::P,
            "V" => Op::V,
            _ => {
                self.pos = column;
                return Err(self.expected("P(...) or V(...)"));
            }
        };
        self.expect('(', "'('")?;
        let semaphore = self.ident()?.to_string();
        self.expect(')', "')'")?;
        Ok((Instruction { op, semaphore }, column))
    }
}

/// Parses the program file format. Process order is declaration order.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let mut semaphores = BTreeMap::new();
    let mut processes: Vec<Process> = Vec::new();
    let mut process_names = HashSet::new();
    // (line, column) of every semaphore use, checked once all `sem` lines are known.
    let mut uses: Vec<(String, usize, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let mut line = Line { number: idx + 1, text: raw, pos: 0 };
        if line.at_end() || line.rest().starts_with('#') {
            continue;
        }
        let keyword_pos = line.pos;
        match line.ident()? {
            "sem" => {
                let name_pos = line.pos;
                let name = line.ident()?.to_string();
                let arity_pos = line.pos;
                let arity = line.number()?;
                if !line.at_end() {
                    return Err(line.expected("end of line"));
                }
                if arity < 2 {
                    line.pos = arity_pos;
                    line.skip_ws();
                    return Err(line.error(ProgramError::Arity { name, arity }.into()));
                }
                if semaphores.insert(name.clone(), arity).is_some() {
                    line.pos = name_pos;
                    line.skip_ws();
                    return Err(line.error(ProgramError::DuplicateSemaphore(name).into()));
                }
            }
            "proc" => {
                let name_pos = line.pos;
                let name = line.ident()?.to_string();
                if !process_names.insert(name.clone()) {
                    line.pos = name_pos;
                    line.skip_ws();
                    return Err(line.error(ProgramError::DuplicateProcess(name).into()));
                }
                line.expect('=', "'='")?;
                let mut body = Vec::new();
                if !line.at_end() {
                    loop {
                        let (instr, column) = line.instruction()?;
                        let column = line.text[..column].chars().count() + 1;
                        uses.push((name.clone(), line.number, column));
                        body.push(instr);
                        if line.at_end() {
                            break;
                        }
                        line.expect('.', "'.' or end of line")?;
                    }
                }
                processes.push(Process { name, body });
            }
            other => {
                line.pos = keyword_pos;
                return Err(line.error(ParseErrorKind::UnknownDeclaration(other.to_string())));
            }
        }
    }

    let mut use_iter = uses.into_iter();
    for p in &processes {
        for instr in &p.body {
            let (process, line, column) = use_iter.next().expect("one position per instruction");
            if !semaphores.contains_key(&instr.semaphore) {
                let kind = ProgramError::UndeclaredSemaphore { process, semaphore: instr.semaphore.clone() };
                return Err(ParseError { line, column, kind: kind.into() });
            }
        }
    }
    Program::new(semaphores, processes).map_err(|e| ParseError { line: 0, column: 0, kind: e.into() })
}

/// `Σ_{n₁,…,n_k}`: `n_i` copies of `P(a_i).P(b).V(b).V(a_i)` with mutexes
/// `a_i` and `b` of arity `k + 1`, or arity `k` when `strict` (the `Σ′`
/// variant).
///
/// Processes are emitted round-robin across groups: first one copy of each
/// group in order, then a second copy of every group that has one, and so
/// on. With `[2, 2]` the groups therefore sit at coordinates `{1,3}` and
/// `{2,4}`.
pub fn gen_sigma(group_sizes: &[usize], strict: bool) -> Result<Program, ProgramError> {
    let k = group_sizes.len();
    if k == 0 || group_sizes.contains(&0) {
        return Err(ProgramError::Generator("sigma needs at least one group, each of size ≥ 1".into()));
    }
    let b_arity = if strict { k } else { k + 1 } as u32;
    if b_arity < 2 {
        return Err(ProgramError::Arity { name: "b".into(), arity: b_arity });
    }
    let mut semaphores: BTreeMap<String, u32> = (1..=k).map(|i| (format!("a{i}"), 2)).collect();
    semaphores.insert("b".into(), b_arity);

    let mut processes = Vec::new();
    let rounds = group_sizes.iter().copied().max().unwrap_or(0);
    for round in 0..rounds {
        for (g, &size) in group_sizes.iter().enumerate() {
            if round < size {
                let a = format!("a{}", g + 1);
                let body =
                    vec![Instruction::p(&a), Instruction::p("b"), Instruction::v("b"), Instruction::v(&a)];
                processes.push(Process::new(format!("p{}", processes.len() + 1), body));
            }
        }
    }
    Program::new(semaphores, processes)
}

/// `n` dining philosophers: forks `f1..fn` are mutexes and philosopher `i`
/// runs `P(f_i).P(f_{i+1}).V(f_{i+1}).V(f_i)`, indices taken around the ring.
pub fn gen_philosophers(n: usize) -> Result<Program, ProgramError> {
    if n < 2 {
        return Err(ProgramError::Generator(format!("philosophers needs n ≥ 2, got {n}")));
    }
    let semaphores = (1..=n).map(|i| (format!("f{i}"), 2)).collect();
    let processes = (1..=n)
        .map(|i| {
            let left = format!("f{i}");
            let right = format!("f{}", i % n + 1);
            let body =
                vec![Instruction::p(&left), Instruction::p(&right), Instruction::v(&right), Instruction::v(&left)];
            Process::new(format!("phil{i}"), body)
        })
        .collect();
    Program::new(semaphores, processes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn body(p: &Process) -> String {
        p.body.iter().map(ToString::to_string).collect::<Vec<_>>().join(".")
    }

    #[test]
    fn parses_two_mutex_users() {
        let prog = parse_program("sem a 2\nproc p = P(a).V(a)\nproc q = P(a).V(a)").unwrap();
        assert_eq!(prog.len(), 2);
        assert_eq!(prog.semaphores().get("a"), Some(&2));
        assert_eq!(prog.processes()[1].name, "q");
        assert_eq!(body(&prog.processes()[0]), "P(a).V(a)");
        assert_eq!(prog.processes()[0].at(1), Some(&Instruction::p("a")));
        assert_eq!(prog.processes()[0].at(0), None);
    }

    #[test]
    fn empty_text_is_the_empty_program() {
        let prog = parse_program("").unwrap();
        assert!(prog.is_empty());
        assert!(parse_program("# nothing\n\n   \n").unwrap().is_empty());
    }

    #[test]
    fn comments_whitespace_and_empty_bodies() {
        let prog = parse_program("  # header\nsem  m   3 \nproc idle =\nproc  w =  P( m ) . V(m)\n").unwrap();
        assert!(prog.processes()[0].is_empty());
        assert_eq!(body(&prog.processes()[1]), "P(m).V(m)");
    }

    #[test]
    fn arity_below_two_is_rejected() {
        let err = parse_program("sem a 1\nproc p = P(a)").unwrap_err();
        assert_eq!((err.line, err.column), (1, 7));
        assert!(matches!(err.kind, ParseErrorKind::Program(ProgramError::Arity { arity: 1, .. })));
    }

    #[test]
    fn error_positions() {
        let err = parse_program("sem a 2\nproc p = P(a).X(a)").unwrap_err();
        assert_eq!((err.line, err.column), (2, 15));

        let err = parse_program("sem a 2\nproc p = P(a).V(b)").unwrap_err();
        assert_eq!((err.line, err.column), (2, 15));
        assert!(matches!(err.kind, ParseErrorKind::Program(ProgramError::UndeclaredSemaphore { .. })));

        let err = parse_program("sem a 2\nsem a 3").unwrap_err();
        assert_eq!((err.line, err.column), (2, 5));
        assert!(matches!(err.kind, ParseErrorKind::Program(ProgramError::DuplicateSemaphore(_))));

        let err = parse_program("sem a 2\nproc p = P(a)\nproc p = V(a)").unwrap_err();
        assert_eq!((err.line, err.column), (3, 6));

        let err = parse_program("semaphore a 2").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnknownDeclaration(_)));

        let err = parse_program("sem a 2\nproc p = P(a) V(a)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Expected("'.' or end of line"));

        assert!(parse_program("sem 9a 2").is_err());
        assert!(parse_program("sem a two").is_err());
    }

    #[test]
    fn semaphores_may_be_declared_after_use() {
        let prog = parse_program("proc p = P(a).V(a)\nsem a 2").unwrap();
        assert_eq!(prog.len(), 1);
    }

    #[test]
    fn sigma_is_round_robin() {
        let prog = gen_sigma(&[2, 2], false).unwrap();
        let bodies: Vec<String> = prog.processes().iter().map(body).collect();
        assert_eq!(
            bodies,
            [
                "P(a1).P(b).V(b).V(a1)",
                "P(a2).P(b).V(b).V(a2)",
                "P(a1).P(b).V(b).V(a1)",
                "P(a2).P(b).V(b).V(a2)"
            ]
        );
        assert_eq!(prog.arity("b"), Some(3));
        assert_eq!(prog.arity("a1"), Some(2));

        let uneven = gen_sigma(&[1, 3], false).unwrap();
        let firsts: Vec<String> =
            uneven.processes().iter().map(|p| p.body[0].semaphore.clone()).collect();
        assert_eq!(firsts, ["a1", "a2", "a2", "a2"]);
    }

    #[test]
    fn sigma_edge_cases() {
        let single = gen_sigma(&[1], false).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(body(&single.processes()[0]), "P(a1).P(b).V(b).V(a1)");
        assert_eq!(single.arity("b"), Some(2));

        let strict = gen_sigma(&[2, 2], true).unwrap();
        assert_eq!(strict.arity("b"), Some(2));
        assert_eq!(strict.processes(), gen_sigma(&[2, 2], false).unwrap().processes());

        assert!(matches!(gen_sigma(&[3], true), Err(ProgramError::Arity { arity: 1, .. })));
        assert!(gen_sigma(&[], false).is_err());
        assert!(gen_sigma(&[2, 0], false).is_err());
    }

    #[test]
    fn philosophers_ring() {
        assert_eq!(gen_philosophers(2).unwrap().len(), 2);
        assert_eq!(gen_philosophers(2).unwrap().semaphores().len(), 2);
        let five = gen_philosophers(5).unwrap();
        assert_eq!(body(&five.processes()[4]), "P(f5).P(f1).V(f1).V(f5)");
        assert_eq!(body(&five.processes()[0]), "P(f1).P(f2).V(f2).V(f1)");
        assert!(gen_philosophers(1).is_err());
    }

    #[test]
    fn render_then_parse() {
        for prog in [gen_sigma(&[2, 3], true).unwrap(), gen_philosophers(4).unwrap(), Program::default()] {
            assert_eq!(parse_program(&prog.to_string()).unwrap(), prog);
        }
    }
}
