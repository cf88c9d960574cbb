use super::predicate::Predicate;
use super::space::StateSpace;

/// Arithmetic over `Z_m`. Variables are indices into the owning [`StateSpace`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Const(u32),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Guard {
    True,
    False,
    Cmp(CmpOp, Expr, Expr),
    Not(Box<Guard>),
    And(Box<Guard>, Box<Guard>),
    Or(Box<Guard>, Box<Guard>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Program {
    Skip,
    Diverge,
    Assign(usize, Expr),
    Seq(Box<Program>, Box<Program>),
    Choice(Box<Program>, Box<Program>),
    Ite(Guard, Box<Program>, Box<Program>),
    While(Guard, Box<Program>),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn var(v: usize) -> Self {
        Expr::Var(v)
    }

    pub fn add(a: Expr, b: Expr) -> Self {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Self {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Self {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    /// Value of the expression on the state with the given index. Total.
    pub fn eval(&self, space: &StateSpace, index: usize) -> u32 {
        let m = space.modulus() as u64;
        self.eval_with(m, &|v| space.decode_var(index, v) as u64) as u32
    }

    fn eval_with(&self, m: u64, var: &dyn Fn(usize) -> u64) -> u64 {
        match self {
            Expr::Const(c) => *c as u64 % m,
            Expr::Var(v) => var(*v),
            Expr::Add(a, b) => (a.eval_with(m, var) + b.eval_with(m, var)) % m,
            Expr::Sub(a, b) => (a.eval_with(m, var) + m - b.eval_with(m, var)) % m,
            Expr::Mul(a, b) => (a.eval_with(m, var) * b.eval_with(m, var)) % m,
        }
    }

    pub fn mentions(&self, var: usize) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(v) => *v == var,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.mentions(var) || b.mentions(var)
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Const(_) | Expr::Var(_) => 3,
            Expr::Mul(..) => 2,
            Expr::Add(..) | Expr::Sub(..) => 1,
        }
    }

    pub fn render(&self, space: &StateSpace) -> String {
        let mut out = String::new();
        self.write(space, &mut out);
        out
    }

    fn write(&self, space: &StateSpace, out: &mut String) {
        let (op, a, b) = match self {
            Expr::Const(c) => return out.push_str(&c.to_string()),
            Expr::Var(v) => return out.push_str(&space.vars()[*v]),
            Expr::Add(a, b) => ("+", a, b),
            Expr::Sub(a, b) => ("-", a, b),
            Expr::Mul(a, b) => ("*", a, b),
        };
        let prec = self.precedence();
        // operators are left-associative: the right operand needs parentheses
        // unless it binds strictly tighter
        write_operand(a, space, out, a.precedence() < prec);
        out.push(' ');
        out.push_str(op);
        out.push(' ');
        write_operand(b, space, out, b.precedence() <= prec);
    }
}

fn write_operand(e: &Expr, space: &StateSpace, out: &mut String, paren: bool) {
    if paren {
        out.push('(');
        e.write(space, out);
        out.push(')');
    } else {
        e.write(space, out);
    }
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
        }
    }

    pub fn apply(self, a: u32, b: u32) -> bool {
        match self {
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
        }
    }
}

#[allow(clippy::should_implement_trait)]
impl Guard {
    pub fn cmp(op: CmpOp, a: Expr, b: Expr) -> Self {
        Guard::Cmp(op, a, b)
    }

    /// `x = k`.
    pub fn var_eq(var: usize, k: u32) -> Self {
        Guard::Cmp(CmpOp::Eq, Expr::Var(var), Expr::Const(k))
    }

    pub fn not(g: Guard) -> Self {
        Guard::Not(Box::new(g))
    }

    pub fn and(a: Guard, b: Guard) -> Self {
        Guard::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Guard, b: Guard) -> Self {
        Guard::Or(Box::new(a), Box::new(b))
    }

    pub fn eval(&self, space: &StateSpace, index: usize) -> bool {
        match self {
            Guard::True => true,
            Guard::False => false,
            Guard::Cmp(op, a, b) => op.apply(a.eval(space, index), b.eval(space, index)),
            Guard::Not(g) => !g.eval(space, index),
            Guard::And(a, b) => a.eval(space, index) && b.eval(space, index),
            Guard::Or(a, b) => a.eval(space, index) || b.eval(space, index),
        }
    }

    /// `{σ ∈ Σ | σ ⊨ g}`.
    pub fn to_predicate(&self, space: &StateSpace) -> Predicate {
        Predicate::from_fn(space.size(), |i| self.eval(space, i))
    }

    fn precedence(&self) -> u8 {
        match self {
            Guard::Or(..) => 1,
            Guard::And(..) => 2,
            _ => 3,
        }
    }

    pub fn render(&self, space: &StateSpace) -> String {
        let mut out = String::new();
        self.write(space, &mut out);
        out
    }

    fn write(&self, space: &StateSpace, out: &mut String) {
        match self {
            Guard::True => out.push_str("true"),
            Guard::False => out.push_str("false"),
            Guard::Cmp(op, a, b) => {
                a.write(space, out);
                out.push(' ');
                out.push_str(op.symbol());
                out.push(' ');
                b.write(space, out);
            }
            Guard::Not(g) => {
                out.push('!');
                g.write_paren(
                    space,
                    out,
                    g.precedence() < 3 || matches!(**g, Guard::Cmp(..)),
                );
            }
            Guard::And(a, b) | Guard::Or(a, b) => {
                let (op, prec) = if matches!(self, Guard::And(..)) {
                    ("&&", 2)
                } else {
                    ("||", 1)
                };
                a.write_paren(space, out, a.precedence() < prec);
                out.push(' ');
                out.push_str(op);
                out.push(' ');
                b.write_paren(space, out, b.precedence() <= prec);
            }
        }
    }

    fn write_paren(&self, space: &StateSpace, out: &mut String, paren: bool) {
        if paren {
            out.push('(');
            self.write(space, out);
            out.push(')');
        } else {
            self.write(space, out);
        }
    }
}

impl Program {
    pub fn assign(var: usize, e: Expr) -> Self {
        Program::Assign(var, e)
    }

    pub fn seq(a: Program, b: Program) -> Self {
        Program::Seq(Box::new(a), Box::new(b))
    }

    pub fn choice(a: Program, b: Program) -> Self {
        Program::Choice(Box::new(a), Box::new(b))
    }

    pub fn ite(g: Guard, a: Program, b: Program) -> Self {
        Program::Ite(g, Box::new(a), Box::new(b))
    }

    pub fn while_loop(g: Guard, body: Program) -> Self {
        Program::While(g, Box::new(body))
    }

    /// AST height; leaves have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Program::Skip | Program::Diverge | Program::Assign(..) => 1,
            Program::Seq(a, b) | Program::Choice(a, b) | Program::Ite(_, a, b) => {
                1 + a.depth().max(b.depth())
            }
            Program::While(_, b) => 1 + b.depth(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Program::Skip | Program::Diverge | Program::Assign(..) => 1,
            Program::Seq(a, b) | Program::Choice(a, b) | Program::Ite(_, a, b) => {
                1 + a.size() + b.size()
            }
            Program::While(_, b) => 1 + b.size(),
        }
    }

    /// True if no `[]` occurs anywhere in the program.
    pub fn is_choice_free(&self) -> bool {
        match self {
            Program::Skip | Program::Diverge | Program::Assign(..) => true,
            Program::Choice(..) => false,
            Program::Seq(a, b) | Program::Ite(_, a, b) => a.is_choice_free() && b.is_choice_free(),
            Program::While(_, b) => b.is_choice_free(),
        }
    }

    pub fn has_loops(&self) -> bool {
        match self {
            Program::Skip | Program::Diverge | Program::Assign(..) => false,
            Program::While(..) => true,
            Program::Seq(a, b) | Program::Choice(a, b) | Program::Ite(_, a, b) => {
                a.has_loops() || b.has_loops()
            }
        }
    }

    /// Single-line concrete syntax; reparses to a structurally equal AST.
    pub fn render(&self, space: &StateSpace) -> String {
        let mut out = String::new();
        self.write(space, &mut out);
        out
    }

    fn write(&self, space: &StateSpace, out: &mut String) {
        match self {
            Program::Skip => out.push_str("skip"),
            Program::Diverge => out.push_str("diverge"),
            Program::Assign(v, e) => {
                out.push_str(&space.vars()[*v]);
                out.push_str(" := ");
                e.write(space, out);
            }
            Program::Seq(a, b) => {
                if matches!(**a, Program::Seq(..)) {
                    a.write_block(space, out);
                } else {
                    a.write(space, out);
                }
                out.push_str("; ");
                b.write(space, out);
            }
            Program::Choice(a, b) => {
                if matches!(**a, Program::Choice(..)) {
                    a.write(space, out);
                } else {
                    a.write_block(space, out);
                }
                out.push_str(" [] ");
                b.write_block(space, out);
            }
            Program::Ite(g, a, b) => {
                out.push_str("if ");
                g.write(space, out);
                out.push(' ');
                a.write_block(space, out);
                out.push_str(" else ");
                b.write_block(space, out);
            }
            Program::While(g, b) => {
                out.push_str("while ");
                g.write(space, out);
                out.push(' ');
                b.write_block(space, out);
            }
        }
    }

    fn write_block(&self, space: &StateSpace, out: &mut String) {
        out.push_str("{ ");
        self.write(space, out);
        out.push_str(" }");
    }
}
