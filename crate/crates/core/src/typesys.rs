//! The class-table source format, ground type expressions, canonical
//! interval arguments, and the erasure / free-type maps.
//!
//! A class table is line-oriented, one declaration per line, `#` comments:
//!
//! ```text
//! class Name extends Super
//! class Name<P> extends Super
//! class Name<P super LB extends UB> extends Super<P>
//! ```
//!
//! `Object` is auto-declared as the top non-generic class and `Null` is
//! synthesized as the bottom of the class poset; neither can be declared
//! (except for a bare `class Object` line, which is accepted and ignored).
//! A generic class passes its parameter verbatim to a generic superclass.
//! Bound expressions may mention the parameter (F-bounds); they are stored
//! unexpanded and substituted at judgment time.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::judge;
use crate::operators::canonical_arg;
use crate::poset::Poset;

/// A ground parameterized type: the bottom type, a non-generic class's type,
/// or a generic class applied to one interval argument.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeExpr {
    Null,
    NonGeneric(String),
    App(String, Box<IntervalArg>),
}

/// A canonical type argument `[lo, hi]` with `lo <: hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalArg {
    pub lo: TypeExpr,
    pub hi: TypeExpr,
}

impl IntervalArg {
    pub fn new(lo: TypeExpr, hi: TypeExpr) -> IntervalArg {
        IntervalArg { lo, hi }
    }

    /// The exact argument `[t, t]`.
    pub fn singleton(t: TypeExpr) -> IntervalArg {
        IntervalArg {
            lo: t.clone(),
            hi: t,
        }
    }

    pub fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }
}

impl TypeExpr {
    pub fn non_generic(name: impl Into<String>) -> TypeExpr {
        TypeExpr::NonGeneric(name.into())
    }

    pub fn app(class: impl Into<String>, arg: IntervalArg) -> TypeExpr {
        TypeExpr::App(class.into(), Box::new(arg))
    }

    /// Maximal nesting depth of type arguments.
    pub fn depth(&self) -> usize {
        match self {
            TypeExpr::Null | TypeExpr::NonGeneric(_) => 0,
            TypeExpr::App(_, arg) => 1 + arg.lo.depth().max(arg.hi.depth()),
        }
    }

    /// The class this type was constructed from; `Null` maps to `Null`.
    pub fn erasure(&self) -> &str {
        match self {
            TypeExpr::Null => "Null",
            TypeExpr::NonGeneric(c) | TypeExpr::App(c, _) => c,
        }
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeExpr::Null => f.write_str("Null"),
            TypeExpr::NonGeneric(c) => f.write_str(c),
            TypeExpr::App(c, arg) => write!(f, "{c}<{arg}>"),
        }
    }
}

impl fmt::Display for IntervalArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&canonical_arg(&self.lo.to_string(), &self.hi.to_string()))
    }
}

/// A bound expression: a type that may mention the declared parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundExpr {
    Param(String),
    Null,
    Class(String),
    App(String, Box<BoundInterval>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundInterval {
    pub lo: BoundExpr,
    pub hi: BoundExpr,
}

impl BoundExpr {
    /// Replaces every occurrence of the parameter by `with`.
    pub fn substitute(&self, with: &TypeExpr) -> TypeExpr {
        match self {
            BoundExpr::Param(_) => with.clone(),
            BoundExpr::Null => TypeExpr::Null,
            BoundExpr::Class(c) => TypeExpr::NonGeneric(c.clone()),
            BoundExpr::App(c, iv) => TypeExpr::App(
                c.clone(),
                Box::new(IntervalArg {
                    lo: iv.lo.substitute(with),
                    hi: iv.hi.substitute(with),
                }),
            ),
        }
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundExpr::Param(p) => f.write_str(p),
            BoundExpr::Null => f.write_str("Null"),
            BoundExpr::Class(c) => f.write_str(c),
            BoundExpr::App(c, iv) => write!(
                f,
                "{c}<{}>",
                canonical_arg(&iv.lo.to_string(), &iv.hi.to_string())
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeParam {
    pub name: String,
    pub lower: Option<BoundExpr>,
    pub upper: Option<BoundExpr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDecl {
    pub name: String,
    /// `None` only for `Object`.
    pub superclass: Option<String>,
    pub param: Option<TypeParam>,
}

impl ClassDecl {
    pub fn is_generic(&self) -> bool {
        self.param.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate class `{name}`")]
    DuplicateClass { line: usize, name: String },
    #[error("line {line}: class `Null` cannot be declared")]
    NullDeclared { line: usize },
    #[error("line {line}: `Object` cannot be redeclared with a parameter or superclass")]
    ObjectRedeclared { line: usize },
    #[error("line {line}: unknown superclass `{name}`")]
    UnknownSuperclass { line: usize, name: String },
    #[error("line {line}: non-generic class cannot extend generic class: `{name}` extends `{superclass}`")]
    NonGenericExtendsGeneric {
        line: usize,
        name: String,
        superclass: String,
    },
    #[error("line {line}: generic superclass `{superclass}` must be passed the type parameter: `extends {superclass}<{param}>`")]
    MissingSuperArgument {
        line: usize,
        superclass: String,
        param: String,
    },
    #[error(
        "line {line}: superclass argument must be the type parameter `{param}`, found `{found}`"
    )]
    BadSuperArgument {
        line: usize,
        param: String,
        found: String,
    },
    #[error("line {line}: superclass `{superclass}` takes no type argument")]
    SuperArgumentOnNonGeneric { line: usize, superclass: String },
    #[error("line {line}: class `{name}` has no type parameter to pass to its superclass")]
    SuperArgumentWithoutParam { line: usize, name: String },
    #[error("line {line}: bound of `{class}`: {message}")]
    BadBound {
        line: usize,
        class: String,
        message: String,
    },
    #[error("extends cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("syntax error in type: {0}")]
    Syntax(String),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("not admittable: class `{0}` takes no type argument")]
    UnexpectedArgument(String),
    #[error("not admittable: generic class `{0}` requires a type argument")]
    MissingArgument(String),
    #[error("malformed interval: `{hi}` is not a supertype of `{lo}`")]
    MalformedInterval { lo: String, hi: String },
}

/// The declared subclassing relation: per-class declarations, the class
/// poset (with synthetic `Null` bottom and `Object` top), and the set of
/// generic class names.
#[derive(Debug, Clone)]
pub struct ClassTable {
    decls: BTreeMap<String, ClassDecl>,
    class_poset: Poset,
    generic_set: BTreeSet<String>,
}

impl ClassTable {
    pub fn parse(source: &str) -> Result<ClassTable, TableError> {
        parse_class_table(source)
    }

    /// The subclassing order over class names, including `Null` and `Object`.
    pub fn class_poset(&self) -> &Poset {
        &self.class_poset
    }

    pub fn generic_set(&self) -> &BTreeSet<String> {
        &self.generic_set
    }

    /// Declared classes, `Object` included; `Null` has no declaration.
    pub fn decl(&self, name: &str) -> Option<&ClassDecl> {
        self.decls.get(name)
    }

    pub fn decls(&self) -> impl Iterator<Item = &ClassDecl> {
        self.decls.values()
    }

    pub fn is_declared(&self, name: &str) -> bool {
        self.decls.contains_key(name)
    }

    pub fn is_generic(&self, name: &str) -> bool {
        self.generic_set.contains(name)
    }

    /// `a <= b` in the subclassing order; false for unknown names.
    pub fn subclass_leq(&self, a: &str, b: &str) -> bool {
        self.class_poset.leq(a, b).unwrap_or(false)
    }

    /// The most general instantiation a class constructs: `C<?>` for a
    /// generic class, the homonymous type otherwise, `Null` for `Null`.
    pub fn free_type(&self, class: &str) -> Result<TypeExpr, TypeError> {
        if class == "Null" {
            return Ok(TypeExpr::Null);
        }
        match self.decls.get(class) {
            Some(d) if d.is_generic() => Ok(TypeExpr::app(
                class,
                IntervalArg::new(TypeExpr::Null, TypeExpr::non_generic("Object")),
            )),
            Some(_) => Ok(TypeExpr::non_generic(class)),
            None => Err(TypeError::UnknownClass(class.to_string())),
        }
    }
}

// ---------------------------------------------------------------------------
// Tokenizer and recursive-descent parsers
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Lt,
    Gt,
    LBracket,
    RBracket,
    Comma,
    Question,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Lt => f.write_str("`<`"),
            Tok::Gt => f.write_str("`>`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Question => f.write_str("`?`"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<Tok>, String> {
    let mut toks = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '<' => {
                chars.next();
                toks.push(Tok::Lt);
            }
            '>' => {
                chars.next();
                toks.push(Tok::Gt);
            }
            '[' => {
                chars.next();
                toks.push(Tok::LBracket);
            }
            ']' => {
                chars.next();
                toks.push(Tok::RBracket);
            }
            ',' => {
                chars.next();
                toks.push(Tok::Comma);
            }
            '?' => {
                chars.next();
                toks.push(Tok::Question);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(ident));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(toks)
}

struct Cursor {
    toks: Vec<Tok>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Result<Cursor, String> {
        Ok(Cursor {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        match self.bump() {
            Some(found) if found == t => Ok(()),
            Some(found) => Err(format!("expected {t}, found {found}")),
            None => Err(format!("expected {t}, found end of input")),
        }
    }

    fn ident(&mut self) -> Result<String, String> {
        match self.bump() {
            Some(Tok::Ident(s)) => Ok(s),
            Some(found) => Err(format!("expected a name, found {found}")),
            None => Err("expected a name, found end of input".to_string()),
        }
    }

    fn finish(&self) -> Result<(), String> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(format!("unexpected trailing {t}")),
        }
    }
}

/// type := "Null" | Name | Name '<' arg '>' | Param
fn parse_open_type(cur: &mut Cursor, param: Option<&str>) -> Result<BoundExpr, String> {
    let name = cur.ident()?;
    if name == "Null" {
        return Ok(BoundExpr::Null);
    }
    if Some(name.as_str()) == param {
        return Ok(BoundExpr::Param(name));
    }
    if cur.eat(&Tok::Lt) {
        let arg = parse_open_arg(cur, param)?;
        cur.expect(Tok::Gt)?;
        Ok(BoundExpr::App(name, Box::new(arg)))
    } else {
        Ok(BoundExpr::Class(name))
    }
}

/// arg := '?' | '?' 'extends' type | '?' 'super' type
///      | '[' type ',' type ']' | type
fn parse_open_arg(cur: &mut Cursor, param: Option<&str>) -> Result<BoundInterval, String> {
    if cur.eat(&Tok::Question) {
        if cur.eat_keyword("extends") {
            let hi = parse_open_type(cur, param)?;
            Ok(BoundInterval {
                lo: BoundExpr::Null,
                hi,
            })
        } else if cur.eat_keyword("super") {
            let lo = parse_open_type(cur, param)?;
            Ok(BoundInterval {
                lo,
                hi: BoundExpr::Class("Object".to_string()),
            })
        } else {
            Ok(BoundInterval {
                lo: BoundExpr::Null,
                hi: BoundExpr::Class("Object".to_string()),
            })
        }
    } else if cur.eat(&Tok::LBracket) {
        let lo = parse_open_type(cur, param)?;
        cur.expect(Tok::Comma)?;
        let hi = parse_open_type(cur, param)?;
        cur.expect(Tok::RBracket)?;
        Ok(BoundInterval { lo, hi })
    } else {
        let t = parse_open_type(cur, param)?;
        Ok(BoundInterval {
            lo: t.clone(),
            hi: t,
        })
    }
}

/// Closes a parameter-free bound expression into a ground type, resolving
/// names against the table. With `check_arity` the result is guaranteed
/// arity-correct; without it, arity mismatches are represented as-is so the
/// admittability judgment can reject them.
fn close_ground(
    table: &ClassTable,
    expr: &BoundExpr,
    check_arity: bool,
) -> Result<TypeExpr, TypeError> {
    match expr {
        BoundExpr::Param(p) => Err(TypeError::UnknownClass(p.clone())),
        BoundExpr::Null => Ok(TypeExpr::Null),
        BoundExpr::Class(c) => {
            if !table.is_declared(c) {
                Err(TypeError::UnknownClass(c.clone()))
            } else if check_arity && table.is_generic(c) {
                Err(TypeError::MissingArgument(c.clone()))
            } else {
                Ok(TypeExpr::NonGeneric(c.clone()))
            }
        }
        BoundExpr::App(c, iv) => {
            if !table.is_declared(c) {
                return Err(TypeError::UnknownClass(c.clone()));
            }
            if check_arity && !table.is_generic(c) {
                return Err(TypeError::UnexpectedArgument(c.clone()));
            }
            let lo = close_ground(table, &iv.lo, check_arity)?;
            let hi = close_ground(table, &iv.hi, check_arity)?;
            Ok(TypeExpr::app(c.clone(), IntervalArg::new(lo, hi)))
        }
    }
}

/// All interval arguments in `t` must be well-formed: `lo <: hi`.
fn check_intervals(table: &ClassTable, t: &TypeExpr) -> Result<(), TypeError> {
    if let TypeExpr::App(_, arg) = t {
        check_intervals(table, &arg.lo)?;
        check_intervals(table, &arg.hi)?;
        if !judge::subtype_sound(table, &arg.lo, &arg.hi) {
            return Err(TypeError::MalformedInterval {
                lo: arg.lo.to_string(),
                hi: arg.hi.to_string(),
            });
        }
    }
    Ok(())
}

/// Parses and canonicalizes a ground type expression, rejecting unknown
/// classes, arity mismatches, and malformed intervals.
pub fn parse_type(text: &str, table: &ClassTable) -> Result<TypeExpr, TypeError> {
    let mut cur = Cursor::new(text).map_err(TypeError::Syntax)?;
    let open = parse_open_type(&mut cur, None).map_err(TypeError::Syntax)?;
    cur.finish().map_err(TypeError::Syntax)?;
    let t = close_ground(table, &open, true)?;
    check_intervals(table, &t)?;
    Ok(t)
}

/// Like [`parse_type`] but keeps arity mismatches and unchecked intervals in
/// the result instead of rejecting them, so that admittability can be judged
/// on the parsed value. Unknown class names are still errors.
pub fn parse_type_lenient(text: &str, table: &ClassTable) -> Result<TypeExpr, TypeError> {
    let mut cur = Cursor::new(text).map_err(TypeError::Syntax)?;
    let open = parse_open_type(&mut cur, None).map_err(TypeError::Syntax)?;
    cur.finish().map_err(TypeError::Syntax)?;
    close_ground(table, &open, false)
}

/// Parses a type-argument expression (wildcard, interval, or exact type)
/// into its canonical interval form.
pub fn parse_interval_arg(text: &str, table: &ClassTable) -> Result<IntervalArg, TypeError> {
    let mut cur = Cursor::new(text).map_err(TypeError::Syntax)?;
    let open = parse_open_arg(&mut cur, None).map_err(TypeError::Syntax)?;
    cur.finish().map_err(TypeError::Syntax)?;
    let lo = close_ground(table, &open.lo, true)?;
    let hi = close_ground(table, &open.hi, true)?;
    check_intervals(table, &lo)?;
    check_intervals(table, &hi)?;
    if !judge::subtype_sound(table, &lo, &hi) {
        return Err(TypeError::MalformedInterval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    Ok(IntervalArg::new(lo, hi))
}

/// Structural check of a bound expression: names declared, arity correct.
/// Bound validity (arguments satisfying bounds) is deliberately not checked.
fn check_bound_structure<F>(expr: &BoundExpr, lookup: &F) -> Result<(), String>
where
    F: Fn(&str) -> Option<bool>,
{
    match expr {
        BoundExpr::Param(_) | BoundExpr::Null => Ok(()),
        BoundExpr::Class(c) => match lookup(c) {
            None => Err(format!("unknown class `{c}`")),
            Some(true) => Err(format!("generic class `{c}` requires a type argument")),
            Some(false) => Ok(()),
        },
        BoundExpr::App(c, iv) => match lookup(c) {
            None => Err(format!("unknown class `{c}`")),
            Some(false) => Err(format!("class `{c}` takes no type argument")),
            Some(true) => {
                check_bound_structure(&iv.lo, lookup)?;
                check_bound_structure(&iv.hi, lookup)
            }
        },
    }
}

/// Parses a bound expression in which `param` names the type variable,
/// validating names and arity against the table.
pub fn parse_bound_expr(
    text: &str,
    table: &ClassTable,
    param: &str,
) -> Result<BoundExpr, TypeError> {
    let mut cur = Cursor::new(text).map_err(TypeError::Syntax)?;
    let expr = parse_open_type(&mut cur, Some(param)).map_err(TypeError::Syntax)?;
    cur.finish().map_err(TypeError::Syntax)?;
    let lookup = |c: &str| table.decl(c).map(|d| d.is_generic());
    check_bound_structure(&expr, &lookup).map_err(|m| match m {
        m if m.starts_with("unknown class") => {
            TypeError::UnknownClass(m.split('`').nth(1).unwrap_or_default().to_string())
        }
        m => TypeError::Syntax(m),
    })?;
    Ok(expr)
}

// ---------------------------------------------------------------------------
// Class-table parsing
// ---------------------------------------------------------------------------

struct RawDecl {
    line: usize,
    name: String,
    param: Option<TypeParam>,
    superclass: Option<String>,
    super_arg: Option<String>,
}

fn syntax(line: usize, message: impl Into<String>) -> TableError {
    TableError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_decl_line(line: usize, text: &str) -> Result<RawDecl, TableError> {
    let mut cur = Cursor::new(text).map_err(|m| syntax(line, m))?;
    if !cur.eat_keyword("class") {
        return Err(syntax(line, "a declaration starts with `class`"));
    }
    let name = cur.ident().map_err(|m| syntax(line, m))?;
    if name == "Object" && cur.peek().is_none() {
        return Ok(RawDecl {
            line,
            name,
            param: None,
            superclass: None,
            super_arg: None,
        });
    }
    let param = if cur.eat(&Tok::Lt) {
        let pname = cur.ident().map_err(|m| syntax(line, m))?;
        let lower = if cur.eat_keyword("super") {
            Some(parse_open_type(&mut cur, Some(&pname)).map_err(|m| syntax(line, m))?)
        } else {
            None
        };
        let upper = if cur.eat_keyword("extends") {
            Some(parse_open_type(&mut cur, Some(&pname)).map_err(|m| syntax(line, m))?)
        } else {
            None
        };
        cur.expect(Tok::Gt).map_err(|m| syntax(line, m))?;
        Some(TypeParam {
            name: pname,
            lower,
            upper,
        })
    } else {
        None
    };
    if !cur.eat_keyword("extends") {
        return Err(syntax(line, "expected `extends`"));
    }
    let superclass = cur.ident().map_err(|m| syntax(line, m))?;
    let super_arg = if cur.eat(&Tok::Lt) {
        let a = cur.ident().map_err(|m| syntax(line, m))?;
        cur.expect(Tok::Gt).map_err(|m| syntax(line, m))?;
        Some(a)
    } else {
        None
    };
    cur.finish().map_err(|m| syntax(line, m))?;
    Ok(RawDecl {
        line,
        name,
        param,
        superclass: Some(superclass),
        super_arg,
    })
}

/// Parses a class-table source into a validated [`ClassTable`].
pub fn parse_class_table(source: &str) -> Result<ClassTable, TableError> {
    let mut raws: Vec<RawDecl> = Vec::new();
    for (i, raw_line) in source.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        raws.push(parse_decl_line(i + 1, line)?);
    }

    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    for raw in &raws {
        if raw.name == "Null" {
            return Err(TableError::NullDeclared { line: raw.line });
        }
        if raw.name == "Object" && (raw.param.is_some() || raw.superclass.is_some()) {
            return Err(TableError::ObjectRedeclared { line: raw.line });
        }
        if seen.insert(&raw.name, raw.line).is_some() {
            return Err(TableError::DuplicateClass {
                line: raw.line,
                name: raw.name.clone(),
            });
        }
    }

    // Genericity of every name, the auto-declared Object included.
    let mut genericity: BTreeMap<&str, bool> = BTreeMap::new();
    genericity.insert("Object", false);
    for raw in &raws {
        genericity.insert(&raw.name, raw.param.is_some());
    }

    for raw in &raws {
        let Some(superclass) = raw.superclass.as_deref() else {
            continue; // bare `class Object`
        };
        let Some(&super_generic) = genericity.get(superclass) else {
            return Err(TableError::UnknownSuperclass {
                line: raw.line,
                name: superclass.to_string(),
            });
        };
        match (&raw.param, super_generic) {
            (None, true) => {
                return Err(TableError::NonGenericExtendsGeneric {
                    line: raw.line,
                    name: raw.name.clone(),
                    superclass: superclass.to_string(),
                });
            }
            (None, false) => {
                if raw.super_arg.is_some() {
                    return Err(TableError::SuperArgumentWithoutParam {
                        line: raw.line,
                        name: raw.name.clone(),
                    });
                }
            }
            (Some(param), true) => match raw.super_arg.as_deref() {
                None => {
                    return Err(TableError::MissingSuperArgument {
                        line: raw.line,
                        superclass: superclass.to_string(),
                        param: param.name.clone(),
                    });
                }
                Some(found) if found != param.name => {
                    return Err(TableError::BadSuperArgument {
                        line: raw.line,
                        param: param.name.clone(),
                        found: found.to_string(),
                    });
                }
                Some(_) => {}
            },
            (Some(_), false) => {
                if raw.super_arg.is_some() {
                    return Err(TableError::SuperArgumentOnNonGeneric {
                        line: raw.line,
                        superclass: superclass.to_string(),
                    });
                }
            }
        }
        if let Some(param) = &raw.param {
            let lookup = |c: &str| genericity.get(c).copied();
            for bound in [param.lower.as_ref(), param.upper.as_ref()]
                .into_iter()
                .flatten()
            {
                check_bound_structure(bound, &lookup).map_err(|message| TableError::BadBound {
                    line: raw.line,
                    class: raw.name.clone(),
                    message,
                })?;
            }
        }
    }

    // Cycle check along the superclass chains.
    let parents: BTreeMap<&str, &str> = raws
        .iter()
        .filter_map(|r| r.superclass.as_deref().map(|s| (r.name.as_str(), s)))
        .collect();
    for raw in &raws {
        let mut path = vec![raw.name.as_str()];
        let mut cur = raw.name.as_str();
        while let Some(&next) = parents.get(cur) {
            if path.contains(&next) {
                let from = path.iter().position(|&n| n == next).unwrap();
                let mut cycle: Vec<String> = path[from..].iter().map(|s| s.to_string()).collect();
                cycle.push(next.to_string());
                return Err(TableError::Cycle(cycle));
            }
            path.push(next);
            cur = next;
        }
    }

    let mut decls: BTreeMap<String, ClassDecl> = BTreeMap::new();
    decls.insert(
        "Object".to_string(),
        ClassDecl {
            name: "Object".to_string(),
            superclass: None,
            param: None,
        },
    );
    for raw in raws {
        if raw.name == "Object" {
            continue;
        }
        decls.insert(
            raw.name.clone(),
            ClassDecl {
                name: raw.name,
                superclass: raw.superclass,
                param: raw.param,
            },
        );
    }

    let generic_set: BTreeSet<String> = decls
        .values()
        .filter(|d| d.is_generic())
        .map(|d| d.name.clone())
        .collect();

    // Class poset: declared superclass edges plus Null below every class
    // that nothing extends.
    let mut elements: Vec<String> = decls.keys().cloned().collect();
    elements.push("Null".to_string());
    let mut relation: Vec<(String, String)> = Vec::new();
    let mut extended: BTreeSet<&str> = BTreeSet::new();
    for d in decls.values() {
        if let Some(s) = &d.superclass {
            relation.push((d.name.clone(), s.clone()));
            extended.insert(s);
        }
    }
    for d in decls.values() {
        if !extended.contains(d.name.as_str()) {
            relation.push(("Null".to_string(), d.name.clone()));
        }
    }
    let class_poset =
        Poset::from_relation(elements, relation).expect("validated declarations are acyclic");

    Ok(ClassTable {
        decls,
        class_poset,
        generic_set,
    })
}
