use std::fmt::Write;

use crate::dsl::ast::{Mode, Payload, SpecFile, WitnessRef};

fn witness(w: &WitnessRef) -> &str {
    match w {
        WitnessRef::Strict => "STRICT",
        WitnessRef::Homotopy(h) => h.as_str(),
    }
}

/// Canonical text of a spec file; parsing it gives back an equal AST.
pub fn serialize_spec(spec: &SpecFile) -> String {
    let mut out = String::new();
    for (i, c) in spec.categories.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "category {}", c.name.text);
        if c.mode == Mode::FreeAcyclic {
            out.push_str("mode free-acyclic\n");
        }
        if !c.objects.is_empty() {
            let names: Vec<&str> = c.objects.iter().map(|o| o.as_str()).collect();
            let _ = writeln!(out, "object {}", names.join(" "));
        }
        for a in &c.arrows {
            let _ = writeln!(
                out,
                "arrow {} : {} -> {}",
                a.name.text, a.source.text, a.target.text
            );
        }
        for k in &c.composites {
            let _ = writeln!(
                out,
                "comp {} . {} = {}",
                k.outer.text, k.inner.text, k.result.text
            );
        }
        if !c.weq.is_empty() {
            let names: Vec<&str> = c.weq.iter().map(|o| o.as_str()).collect();
            let _ = writeln!(out, "weq {}", names.join(" "));
        }
        for p in &c.payloads {
            payload(&mut out, p);
        }
    }
    out
}

fn payload(out: &mut String, p: &Payload) {
    match p {
        Payload::Functor {
            name,
            signature,
            objects,
            arrows,
        } => {
            let _ = write!(out, "functor {}", name.text);
            if let Some((a, b)) = signature {
                let _ = write!(out, " : {} -> {}", a.text, b.text);
            }
            out.push_str(" {\n");
            for (a, b) in objects {
                let _ = writeln!(out, "  obj {} => {}", a.text, b.text);
            }
            for (a, b) in arrows {
                let _ = writeln!(out, "  arr {} => {}", a.text, b.text);
            }
            out.push_str("}\n");
        }
        Payload::Nat {
            name,
            source,
            target,
            components,
        } => {
            let _ = writeln!(
                out,
                "nat {} : {} => {} {{",
                name.text, source.text, target.text
            );
            for (a, m) in components {
                let _ = writeln!(out, "  at {} : {}", a.text, m.text);
            }
            out.push_str("}\n");
        }
        Payload::Cylinder {
            base,
            object,
            i0,
            i1,
            p,
        } => {
            let _ = writeln!(
                out,
                "cylinder {} {{ obj {} i0 {} i1 {} p {} }}",
                base.text, object.text, i0.text, i1.text, p.text
            );
        }
        Payload::LHomotopy {
            name,
            cylinder,
            f,
            g,
            via,
        } => {
            let _ = writeln!(
                out,
                "lhomotopy {} {{ cyl {} f {} g {} via {} }}",
                name.text, cylinder.text, f.text, g.text, via.text
            );
        }
        Payload::Monad {
            name,
            functor,
            eta,
            mu,
        } => {
            let _ = writeln!(
                out,
                "monad {} {{ functor {} eta {} mu {} }}",
                name.text, functor.text, eta.text, mu.text
            );
        }
        Payload::Algebra {
            name,
            monad,
            object,
            action,
            unit,
            assoc,
        } => {
            let _ = writeln!(
                out,
                "algebra {} {{ monad {} obj {} act {} unit {} assoc {} }}",
                name.text,
                monad.text,
                object.text,
                action.text,
                witness(unit),
                witness(assoc)
            );
        }
        Payload::Idem {
            name,
            functor,
            ell,
            witnesses,
        } => {
            let _ = write!(
                out,
                "idem {} {{ functor {} ell {}",
                name.text, functor.text, ell.text
            );
            for (z, w) in witnesses {
                let _ = write!(out, " cyl {} {}", z.text, witness(w));
            }
            out.push_str(" }\n");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parser::parse_spec;

    #[test]
    fn round_trip_is_stable() {
        let text = "category C\nmode free-acyclic\nobject X Y\narrow f : X -> Y\nweq id_X\n\
                    functor L { obj X => Y; obj Y => Y; arr f => id_Y }\n\
                    nat ell : Id => L { at X : f; at Y : id_Y }\n\
                    idem S { functor L ell ell cyl X STRICT }\n";
        let spec = parse_spec(text).unwrap();
        let once = serialize_spec(&spec);
        let reparsed = parse_spec(&once).unwrap();
        assert_eq!(spec, reparsed);
        assert_eq!(once, serialize_spec(&reparsed));
    }
}
