//! Parser and evaluator for the straight-line subset emitted by this module.
//!
//! Accepted body statements are exactly the ones the emitters produce:
//! temporaries, key stores, `^=`, guarded swaps, `COMP(x, y)`, and the
//! expression forms `<`, `^`/`xor`, `?:`/`select`, `MIN`/`MAX`. Loops, or any
//! other construct, are rejected with a parse error.

use std::collections::HashMap;

use crate::codegen::EmitTarget;
use crate::error::{Error, Result};

/// The guarded-swap macro used by the staged insertion listings.
pub const MACRO_COMP: &str = "#define COMP(x, y) if (a[y] < a[x]) SWAP(x, y)";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Key(usize),
    Var(String),
    Less(Box<Expr>, Box<Expr>),
    Xor(Box<Expr>, Box<Expr>),
    Select(Box<Expr>, Box<Expr>, Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Let(String, Expr),
    Store(usize, Expr),
    XorStore(usize, Expr),
    Swap(usize, usize),
    Guarded(Expr, Vec<Stmt>),
}

/// One comparator block: the statements emitted for a single comparator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub stmts: Vec<Stmt>,
}

/// Statement-level census of a block, counted through guarded bodies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BlockShape {
    /// Temporaries initialized from a key.
    pub copies: usize,
    /// `<` evaluations, including branch guards.
    pub comparisons: usize,
    /// Key stores whose value is a conditional selection.
    pub conditional_assignments: usize,
    /// Key stores that combine values with XOR.
    pub xor_combines: usize,
    pub min_max: usize,
    /// Data-dependent branches.
    pub branches: usize,
}

impl Block {
    pub fn shape(&self) -> BlockShape {
        let mut shape = BlockShape::default();
        census(&self.stmts, &mut shape);
        shape
    }
}

fn census(stmts: &[Stmt], shape: &mut BlockShape) {
    for stmt in stmts {
        match stmt {
            Stmt::Let(_, e) => {
                if matches!(e, Expr::Key(_)) {
                    shape.copies += 1;
                }
                expr_census(e, shape);
            }
            Stmt::Store(_, e) => {
                match e {
                    Expr::Select(..) => shape.conditional_assignments += 1,
                    Expr::Xor(..) => shape.xor_combines += 1,
                    _ => {}
                }
                expr_census(e, shape);
            }
            Stmt::XorStore(_, e) => {
                shape.xor_combines += 1;
                expr_census(e, shape);
            }
            Stmt::Swap(..) => {}
            Stmt::Guarded(cond, body) => {
                shape.branches += 1;
                expr_census(cond, shape);
                census(body, shape);
            }
        }
    }
}

fn expr_census(e: &Expr, shape: &mut BlockShape) {
    match e {
        Expr::Key(_) | Expr::Var(_) => {}
        Expr::Less(a, b) => {
            shape.comparisons += 1;
            expr_census(a, shape);
            expr_census(b, shape);
        }
        Expr::Xor(a, b) => {
            expr_census(a, shape);
            expr_census(b, shape);
        }
        Expr::Min(a, b) | Expr::Max(a, b) => {
            shape.min_max += 1;
            expr_census(a, shape);
            expr_census(b, shape);
        }
        Expr::Select(c, a, b) => {
            expr_census(c, shape);
            expr_census(a, shape);
            expr_census(b, shape);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub name: String,
    /// One entry per source line of the body.
    pub rows: Vec<Vec<Block>>,
}

impl Program {
    pub fn blocks(&self) -> impl Iterator<Item = &Block> + '_ {
        self.rows.iter().flatten()
    }

    /// Number of keys the body indexes, i.e. one past the largest index.
    pub fn keys_used(&self) -> usize {
        fn stmt_max(s: &Stmt) -> usize {
            match s {
                Stmt::Let(_, e) => expr_max(e),
                Stmt::Store(i, e) | Stmt::XorStore(i, e) => (i + 1).max(expr_max(e)),
                Stmt::Swap(i, j) => i.max(j) + 1,
                Stmt::Guarded(c, body) => body.iter().map(stmt_max).fold(expr_max(c), usize::max),
            }
        }
        fn expr_max(e: &Expr) -> usize {
            match e {
                Expr::Key(i) => i + 1,
                Expr::Var(_) => 0,
                Expr::Less(a, b) | Expr::Xor(a, b) | Expr::Min(a, b) | Expr::Max(a, b) => {
                    expr_max(a).max(expr_max(b))
                }
                Expr::Select(c, a, b) => expr_max(c).max(expr_max(a)).max(expr_max(b)),
            }
        }
        self.blocks().flat_map(|b| &b.stmts).map(stmt_max).max().unwrap_or(0)
    }

    /// Executes the body on `keys`, which must cover every index it uses.
    pub fn run(&self, keys: &mut [i64]) -> Result<()> {
        let needed = self.keys_used();
        if keys.len() < needed {
            return Err(Error::InputShape {
                expected: needed,
                actual: keys.len(),
            });
        }
        let mut env = HashMap::new();
        for block in self.blocks() {
            exec(&block.stmts, keys, &mut env)?;
        }
        Ok(())
    }
}

fn exec(stmts: &[Stmt], keys: &mut [i64], env: &mut HashMap<String, i64>) -> Result<()> {
    for stmt in stmts {
        match stmt {
            Stmt::Let(name, e) => {
                let v = eval(e, keys, env)?;
                env.insert(name.clone(), v);
            }
            Stmt::Store(i, e) => keys[*i] = eval(e, keys, env)?,
            Stmt::XorStore(i, e) => keys[*i] ^= eval(e, keys, env)?,
            Stmt::Swap(i, j) => keys.swap(*i, *j),
            Stmt::Guarded(cond, body) => {
                if eval(cond, keys, env)? != 0 {
                    exec(body, keys, env)?;
                }
            }
        }
    }
    Ok(())
}

fn eval(e: &Expr, keys: &[i64], env: &HashMap<String, i64>) -> Result<i64> {
    Ok(match e {
        Expr::Key(i) => keys[*i],
        Expr::Var(name) => *env
            .get(name)
            .ok_or_else(|| Error::Domain(format!("`{name}` used before assignment")))?,
        Expr::Less(a, b) => i64::from(eval(a, keys, env)? < eval(b, keys, env)?),
        Expr::Xor(a, b) => eval(a, keys, env)? ^ eval(b, keys, env)?,
        Expr::Select(c, a, b) => {
            if eval(c, keys, env)? != 0 {
                eval(a, keys, env)?
            } else {
                eval(b, keys, env)?
            }
        }
        Expr::Min(a, b) => eval(a, keys, env)?.min(eval(b, keys, env)?),
        Expr::Max(a, b) => eval(a, keys, env)?.max(eval(b, keys, env)?),
    })
}

/// Parses emitted source for `target`.
pub fn parse_program(text: &str, target: EmitTarget) -> Result<Program> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let (header, footer) = match target {
        EmitTarget::CSource => ("static inline void ", "}"),
        EmitTarget::Pseudocode => ("procedure ", "end procedure"),
    };
    let start = lines
        .iter()
        .position(|(_, l)| l.starts_with(header))
        .ok_or_else(|| Error::parse(1, "missing function header"))?;
    for &(n, l) in &lines[..start] {
        let preamble = target == EmitTarget::CSource && (l.starts_with("#include") || l.starts_with("#define"));
        if !preamble {
            return Err(Error::parse(n, "unexpected text before function header"));
        }
    }
    let (header_line, header_text) = lines[start];
    let name = parse_header(&header_text[header.len()..], target)
        .ok_or_else(|| Error::parse(header_line, "malformed function header"))?;

    let body = &lines[start + 1..];
    let end = body
        .iter()
        .position(|(_, l)| *l == footer)
        .ok_or_else(|| Error::parse(header_line, "function is never closed"))?;
    if let Some(&(n, _)) = body.get(end + 1) {
        return Err(Error::parse(n, "text after end of function"));
    }
    let rows = body[..end]
        .iter()
        .map(|&(n, l)| {
            let tokens = tokenize(l).map_err(|m| Error::parse(n, m))?;
            let mut p = Parser { tokens, pos: 0, target };
            p.row().map_err(|m| Error::parse(n, m))
        })
        .collect::<Result<_>>()?;
    Ok(Program { name, rows })
}

fn parse_header(rest: &str, target: EmitTarget) -> Option<String> {
    let (name, params) = rest.split_once('(')?;
    let ok = match target {
        EmitTarget::CSource => params == "int64_t *a) {",
        EmitTarget::Pseudocode => params
            .strip_prefix("a[0..")
            .and_then(|p| p.strip_suffix("])"))
            .is_some_and(|k| k.parse::<usize>().is_ok()),
    };
    let valid_ident = !name.is_empty()
        && !name.starts_with(|c: char| c.is_ascii_digit())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    (ok && valid_ident).then(|| name.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    Punct(&'static str),
}

const PUNCT: [&str; 16] = ["<-", "^=", "[", "]", "(", ")", "{", "}", ";", ",", "?", ":", "<", "^", "=", "|"];

fn tokenize(line: &str) -> std::result::Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut rest = line;
    while let Some(c) = rest.chars().next() {
        if c.is_whitespace() {
            rest = &rest[c.len_utf8()..];
        } else if c.is_ascii_alphabetic() || c == '_' {
            let end = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
            out.push(Tok::Ident(rest[..end].to_string()));
            rest = &rest[end..];
        } else if c.is_ascii_digit() {
            let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            let n = rest[..end].parse().map_err(|_| format!("number `{}` too large", &rest[..end]))?;
            out.push(Tok::Num(n));
            rest = &rest[end..];
        } else if let Some(p) = PUNCT.iter().find(|p| rest.starts_with(**p)) {
            out.push(Tok::Punct(p));
            rest = &rest[p.len()..];
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

type PResult<T> = std::result::Result<T, String>;

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
    target: EmitTarget,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> PResult<Tok> {
        let t = self.tokens.get(self.pos).cloned().ok_or("unexpected end of line")?;
        self.pos += 1;
        Ok(t)
    }

    fn at_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Tok::Punct(q)) if *q == p)
    }

    fn at_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(i)) if i == s)
    }

    fn punct(&mut self, p: &str) -> PResult<()> {
        match self.next()? {
            Tok::Punct(q) if q == p => Ok(()),
            t => Err(format!("expected `{p}`, found {t:?}")),
        }
    }

    fn keyword(&mut self, s: &str) -> PResult<()> {
        match self.next()? {
            Tok::Ident(i) if i == s => Ok(()),
            t => Err(format!("expected `{s}`, found {t:?}")),
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.next()? {
            Tok::Ident(i) if !RESERVED.contains(&i.as_str()) => Ok(i),
            t => Err(format!("expected identifier, found {t:?}")),
        }
    }

    fn num(&mut self) -> PResult<usize> {
        match self.next()? {
            Tok::Num(n) => Ok(n),
            t => Err(format!("expected index, found {t:?}")),
        }
    }

    /// `a[k]`
    fn key(&mut self) -> PResult<usize> {
        self.keyword("a")?;
        self.punct("[")?;
        let k = self.num()?;
        self.punct("]")?;
        Ok(k)
    }

    fn row(&mut self) -> PResult<Vec<Block>> {
        let mut blocks = Vec::new();
        while self.peek().is_some() {
            blocks.push(match self.target {
                EmitTarget::CSource => self.c_block()?,
                EmitTarget::Pseudocode => {
                    if !blocks.is_empty() {
                        self.punct("|")?;
                    }
                    self.pseudo_block()?
                }
            });
        }
        Ok(blocks)
    }

    fn c_block(&mut self) -> PResult<Block> {
        let stmts = if self.at_ident("COMP") {
            self.next()?;
            let (x, y) = self.index_pair()?;
            vec![guarded_swap(x, y)]
        } else if self.at_ident("if") {
            self.next()?;
            self.punct("(")?;
            let cond = self.c_expr()?;
            self.punct(")")?;
            vec![Stmt::Guarded(cond, self.c_braced()?)]
        } else if self.at_punct("{") {
            self.c_braced()?
        } else {
            return Err(format!("expected comparator block, found {:?}", self.peek()));
        };
        Ok(Block { stmts })
    }

    fn index_pair(&mut self) -> PResult<(usize, usize)> {
        self.punct("(")?;
        let x = self.num()?;
        self.punct(",")?;
        let y = self.num()?;
        self.punct(")")?;
        Ok((x, y))
    }

    fn c_braced(&mut self) -> PResult<Vec<Stmt>> {
        self.punct("{")?;
        let mut stmts = Vec::new();
        while !self.at_punct("}") {
            stmts.push(self.c_stmt()?);
        }
        self.punct("}")?;
        Ok(stmts)
    }

    fn c_stmt(&mut self) -> PResult<Stmt> {
        let stmt = if self.at_ident("int64_t") || self.at_ident("int") {
            self.next()?;
            let name = self.ident()?;
            self.punct("=")?;
            Stmt::Let(name, self.c_expr()?)
        } else if self.at_ident("a") {
            let k = self.key()?;
            if self.at_punct("^=") {
                self.next()?;
                Stmt::XorStore(k, self.c_expr()?)
            } else {
                self.punct("=")?;
                Stmt::Store(k, self.c_expr()?)
            }
        } else if self.at_ident("SWAP") {
            self.next()?;
            let (x, y) = self.index_pair()?;
            return Ok(Stmt::Swap(x, y));
        } else {
            return Err(format!("unsupported statement starting at {:?}", self.peek()));
        };
        self.punct(";")?;
        Ok(stmt)
    }

    /// `?:` binds loosest, then `^`, then `<`.
    fn c_expr(&mut self) -> PResult<Expr> {
        let cond = self.c_xor()?;
        if self.at_punct("?") {
            self.next()?;
            let a = self.c_expr()?;
            self.punct(":")?;
            let b = self.c_expr()?;
            return Ok(Expr::Select(Box::new(cond), Box::new(a), Box::new(b)));
        }
        Ok(cond)
    }

    fn c_xor(&mut self) -> PResult<Expr> {
        let mut e = self.less()?;
        while self.at_punct("^") {
            self.next()?;
            e = Expr::Xor(Box::new(e), Box::new(self.less()?));
        }
        Ok(e)
    }

    fn less(&mut self) -> PResult<Expr> {
        let a = self.atom()?;
        if self.at_punct("<") {
            self.next()?;
            return Ok(Expr::Less(Box::new(a), Box::new(self.atom()?)));
        }
        Ok(a)
    }

    fn atom(&mut self) -> PResult<Expr> {
        if self.at_ident("a") {
            return Ok(Expr::Key(self.key()?));
        }
        let name = self.ident()?;
        let min_max = match (self.target, name.as_str()) {
            (EmitTarget::CSource, "MIN") | (EmitTarget::Pseudocode, "min") => Some(true),
            (EmitTarget::CSource, "MAX") | (EmitTarget::Pseudocode, "max") => Some(false),
            _ => None,
        };
        if let Some(is_min) = min_max {
            self.punct("(")?;
            let a = self.operand()?;
            self.punct(",")?;
            let b = self.operand()?;
            self.punct(")")?;
            let (a, b) = (Box::new(a), Box::new(b));
            return Ok(if is_min { Expr::Min(a, b) } else { Expr::Max(a, b) });
        }
        if self.target == EmitTarget::Pseudocode && name == "select" {
            self.punct("(")?;
            let c = self.operand()?;
            self.punct(",")?;
            let a = self.operand()?;
            self.punct(",")?;
            let b = self.operand()?;
            self.punct(")")?;
            return Ok(Expr::Select(Box::new(c), Box::new(a), Box::new(b)));
        }
        Ok(Expr::Var(name))
    }

    fn operand(&mut self) -> PResult<Expr> {
        match self.target {
            EmitTarget::CSource => self.c_expr(),
            EmitTarget::Pseudocode => self.pseudo_expr(),
        }
    }

    fn pseudo_block(&mut self) -> PResult<Block> {
        let mut stmts = vec![self.pseudo_stmt()?];
        while self.at_punct(";") {
            self.next()?;
            stmts.push(self.pseudo_stmt()?);
        }
        Ok(Block { stmts })
    }

    fn pseudo_stmt(&mut self) -> PResult<Stmt> {
        if self.at_ident("if") {
            self.next()?;
            let cond = self.pseudo_expr()?;
            self.keyword("then")?;
            self.keyword("swap")?;
            self.punct("(")?;
            let x = self.key()?;
            self.punct(",")?;
            let y = self.key()?;
            self.punct(")")?;
            return Ok(Stmt::Guarded(cond, vec![Stmt::Swap(x, y)]));
        }
        if self.at_ident("a") {
            let k = self.key()?;
            self.punct("<-")?;
            return Ok(Stmt::Store(k, self.pseudo_expr()?));
        }
        let name = self.ident()?;
        self.punct("<-")?;
        Ok(Stmt::Let(name, self.pseudo_expr()?))
    }

    fn pseudo_expr(&mut self) -> PResult<Expr> {
        let mut e = self.less()?;
        while self.at_ident("xor") {
            self.next()?;
            e = Expr::Xor(Box::new(e), Box::new(self.less()?));
        }
        Ok(e)
    }
}

const RESERVED: [&str; 11] = ["a", "if", "then", "for", "while", "do", "goto", "return", "xor", "int", "int64_t"];

fn guarded_swap(x: usize, y: usize) -> Stmt {
    Stmt::Guarded(
        Expr::Less(Box::new(Expr::Key(y)), Box::new(Expr::Key(x))),
        vec![Stmt::Swap(x, y)],
    )
}
