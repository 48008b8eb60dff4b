use serde::Serialize;

use crate::dsl::lexer::Pos;

/// A name with the position it was written at. Equality ignores the
/// position.
#[derive(Clone, Debug, Eq, Serialize)]
pub struct Name {
    pub text: String,
    #[serde(skip)]
    pub pos: Pos,
}

impl Name {
    pub fn new(text: &str) -> Name {
        Name {
            text: text.to_string(),
            pos: Pos::default(),
        }
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }
}

impl PartialEq for Name {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    Table,
    FreeAcyclic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowDecl {
    pub name: Name,
    pub source: Name,
    pub target: Name,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompDecl {
    pub outer: Name,
    pub inner: Name,
    pub result: Name,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessRef {
    Strict,
    Homotopy(Name),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Payload {
    Functor {
        name: Name,
        signature: Option<(Name, Name)>,
        objects: Vec<(Name, Name)>,
        arrows: Vec<(Name, Name)>,
    },
    Nat {
        name: Name,
        source: Name,
        target: Name,
        components: Vec<(Name, Name)>,
    },
    Cylinder {
        base: Name,
        object: Name,
        i0: Name,
        i1: Name,
        p: Name,
    },
    LHomotopy {
        name: Name,
        cylinder: Name,
        f: Name,
        g: Name,
        via: Name,
    },
    Monad {
        name: Name,
        functor: Name,
        eta: Name,
        mu: Name,
    },
    Algebra {
        name: Name,
        monad: Name,
        object: Name,
        action: Name,
        unit: WitnessRef,
        assoc: WitnessRef,
    },
    Idem {
        name: Name,
        functor: Name,
        ell: Name,
        witnesses: Vec<(Name, WitnessRef)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CategorySection {
    pub name: Name,
    pub mode: Mode,
    pub objects: Vec<Name>,
    pub arrows: Vec<ArrowDecl>,
    pub composites: Vec<CompDecl>,
    pub weq: Vec<Name>,
    pub payloads: Vec<Payload>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecFile {
    pub categories: Vec<CategorySection>,
}
