//! NLC-2 expressions: labelled leaves, products `×_S` and relabellings `ρ_R`.
//!
//! Text form: leaf `v<id>:<label>`, product `(<e> x<mask> <e>)` with the
//! 4-bit mask of [`SRelation`], relabel `r<R(1)><R(2)>(<e>)`. Whitespace is
//! allowed between tokens.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::label::{Label, LabelledGraph};
use crate::scut::SRelation;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Nlc2Expression {
    Leaf {
        vertex: usize,
        label: Label,
    },
    Product {
        relation: SRelation,
        left: Box<Nlc2Expression>,
        right: Box<Nlc2Expression>,
    },
    /// `map[i]` is the new label of label `i + 1`.
    Relabel {
        map: [Label; 2],
        child: Box<Nlc2Expression>,
    },
}

impl Nlc2Expression {
    pub fn leaf(vertex: usize, label: Label) -> Nlc2Expression {
        Nlc2Expression::Leaf { vertex, label }
    }

    pub fn product(relation: SRelation, left: Nlc2Expression, right: Nlc2Expression) -> Nlc2Expression {
        Nlc2Expression::Product { relation, left: Box::new(left), right: Box::new(right) }
    }

    pub fn relabel(map: [Label; 2], child: Nlc2Expression) -> Nlc2Expression {
        Nlc2Expression::Relabel { map, child: Box::new(child) }
    }

    /// Sends every label to `label`.
    pub fn relabel_all(label: Label, child: Nlc2Expression) -> Nlc2Expression {
        Nlc2Expression::relabel([label, label], child)
    }

    pub fn is_rho_free(&self) -> bool {
        match self {
            Nlc2Expression::Leaf { .. } => true,
            Nlc2Expression::Product { left, right, .. } => left.is_rho_free() && right.is_rho_free(),
            Nlc2Expression::Relabel { .. } => false,
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Nlc2Expression::Leaf { .. } => 1,
            Nlc2Expression::Product { left, right, .. } => left.leaf_count() + right.leaf_count(),
            Nlc2Expression::Relabel { child, .. } => child.leaf_count(),
        }
    }

    /// The same term with labels 1 and 2 exchanged everywhere.
    pub fn swapped(&self) -> Nlc2Expression {
        match self {
            Nlc2Expression::Leaf { vertex, label } => Nlc2Expression::leaf(*vertex, label.swapped()),
            Nlc2Expression::Product { relation, left, right } => {
                Nlc2Expression::product(relation.swap_labels(), left.swapped(), right.swapped())
            }
            Nlc2Expression::Relabel { map, child } => {
                Nlc2Expression::relabel([map[1].swapped(), map[0].swapped()], child.swapped())
            }
        }
    }

    /// Leaves with their final labels, followed by the edge list.
    pub(crate) fn evaluate_sparse(&self) -> (Vec<(usize, Label)>, Vec<(usize, usize)>) {
        enum Step<'a> {
            Visit(&'a Nlc2Expression),
            Join(SRelation),
            Map([Label; 2]),
        }
        let mut edges = Vec::new();
        let mut values: Vec<Vec<(usize, Label)>> = Vec::new();
        let mut todo = vec![Step::Visit(self)];
        while let Some(step) = todo.pop() {
            match step {
                Step::Visit(Nlc2Expression::Leaf { vertex, label }) => values.push(vec![(*vertex, *label)]),
                Step::Visit(Nlc2Expression::Product { relation, left, right }) => {
                    todo.push(Step::Join(*relation));
                    todo.push(Step::Visit(right));
                    todo.push(Step::Visit(left));
                }
                Step::Visit(Nlc2Expression::Relabel { map, child }) => {
                    todo.push(Step::Map(*map));
                    todo.push(Step::Visit(child));
                }
                Step::Join(s) => {
                    let right = values.pop().expect("right operand");
                    let mut left = values.pop().expect("left operand");
                    if s.mask() != 0 {
                        for &(u, lu) in &left {
                            for &(v, lv) in &right {
                                if s.contains(lu, lv) {
                                    edges.push((u, v));
                                }
                            }
                        }
                    }
                    left.extend(right);
                    values.push(left);
                }
                Step::Map(map) => {
                    for entry in values.last_mut().expect("relabel operand") {
                        entry.1 = map[entry.1.index()];
                    }
                }
            }
        }
        (values.pop().expect("result"), edges)
    }

    /// Evaluates the term. Leaf ids must be exactly `0..n`.
    pub fn evaluate(&self) -> Result<LabelledGraph> {
        let (leaves, edges) = self.evaluate_sparse();
        let n = leaves.len();
        let mut labels = vec![None; n];
        for &(v, l) in &leaves {
            if v >= n {
                return Err(Error::MalformedExpression(alloc::format!(
                    "leaf id {v} out of range for {n} leaves"
                )));
            }
            if labels[v].is_some() {
                return Err(Error::MalformedExpression(alloc::format!("duplicate leaf id {v}")));
            }
            labels[v] = Some(l);
        }
        let graph = Graph::build(n, &edges)?;
        LabelledGraph::new(graph, labels.into_iter().map(|l| l.expect("every id seen")).collect())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out);
        out
    }

    fn render_into(&self, out: &mut String) {
        match self {
            Nlc2Expression::Leaf { vertex, label } => {
                let _ = write!(out, "v{vertex}:{label}");
            }
            Nlc2Expression::Product { relation, left, right } => {
                out.push('(');
                left.render_into(out);
                let _ = write!(out, " x{relation} ");
                right.render_into(out);
                out.push(')');
            }
            Nlc2Expression::Relabel { map, child } => {
                let _ = write!(out, "r{}{}(", map[0], map[1]);
                child.render_into(out);
                out.push(')');
            }
        }
    }

    pub fn parse(text: &str) -> Result<Nlc2Expression> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }
}

impl core::fmt::Display for Nlc2Expression {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.render())
    }
}

impl core::str::FromStr for Nlc2Expression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Nlc2Expression> {
        Nlc2Expression::parse(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&alloc::format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        core::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Syntax { position: start, message: "number too large".into() })
    }

    fn label(&mut self) -> Result<Label> {
        let l = self.src.get(self.pos).and_then(|&c| Label::from_u8(c.wrapping_sub(b'0')));
        match l {
            Some(l) => {
                self.pos += 1;
                Ok(l)
            }
            None => Err(self.error("expected label 1 or 2")),
        }
    }

    fn expr(&mut self) -> Result<Nlc2Expression> {
        match self.peek() {
            Some(b'v') => {
                self.pos += 1;
                let vertex = self.number()?;
                if self.src.get(self.pos) != Some(&b':') {
                    return Err(self.error("expected ':'"));
                }
                self.pos += 1;
                Ok(Nlc2Expression::leaf(vertex, self.label()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let left = self.expr()?;
                self.expect(b'x')?;
                let start = self.pos;
                let end = (start + 4).min(self.src.len());
                let mask = core::str::from_utf8(&self.src[start..end])
                    .ok()
                    .and_then(|t| t.parse::<SRelation>().ok())
                    .ok_or_else(|| self.error("expected a 4-bit mask"))?;
                self.pos = end;
                let right = self.expr()?;
                self.expect(b')')?;
                Ok(Nlc2Expression::product(mask, left, right))
            }
            Some(b'r') => {
                self.pos += 1;
                let a = self.label()?;
                let b = self.label()?;
                self.expect(b'(')?;
                let child = self.expr()?;
                self.expect(b')')?;
                Ok(Nlc2Expression::relabel([a, b], child))
            }
            Some(_) => Err(self.error("expected 'v', '(' or 'r'")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Settings for [`random_expression_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub n: usize,
    /// Number of labels used, 1 or 2.
    pub k: u8,
    pub seed: u64,
    pub allow_relabel: bool,
}

/// A random expression on leaves `0..n`. With `k = 2` relabellings are
/// allowed; with `k = 1` every label is 1 and the result is a cograph.
pub fn random_expression(n: usize, k: u8, seed: u64) -> Nlc2Expression {
    random_expression_with(GeneratorConfig { n, k, seed, allow_relabel: k == 2 })
}

/// Shapes split uniformly at random; each mask pair is switched on with
/// probability 0.35 so relations lean sparse.
pub fn random_expression_with(cfg: GeneratorConfig) -> Nlc2Expression {
    assert!(cfg.n >= 1, "an expression needs at least one leaf");
    assert!(cfg.k == 1 || cfg.k == 2, "only 1 or 2 labels");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ids: Vec<usize> = (0..cfg.n).collect();
    ids.shuffle(&mut rng);
    build_random(&ids, &cfg, &mut rng)
}

fn build_random(ids: &[usize], cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Nlc2Expression {
    let pick_label = |rng: &mut ChaCha8Rng| if cfg.k == 1 || rng.gen_bool(0.5) { Label::One } else { Label::Two };
    if ids.len() == 1 {
        return Nlc2Expression::leaf(ids[0], pick_label(rng));
    }
    let cut = rng.gen_range(1..ids.len());
    let left = build_random(&ids[..cut], cfg, rng);
    let right = build_random(&ids[cut..], cfg, rng);
    let mask = if cfg.k == 1 {
        if rng.gen_bool(0.5) { 8 } else { 0 }
    } else {
        (0..4).fold(0u8, |m, b| if rng.gen_bool(0.35) { m | 1 << b } else { m })
    };
    let e = Nlc2Expression::product(SRelation::new(mask).expect("4-bit mask"), left, right);
    if cfg.allow_relabel && cfg.k == 2 && rng.gen_bool(0.3) {
        let maps = [[Label::Two, Label::One], [Label::One, Label::One], [Label::Two, Label::Two]];
        Nlc2Expression::relabel(*maps.choose(rng).expect("non-empty"), e)
    } else {
        e
    }
}
