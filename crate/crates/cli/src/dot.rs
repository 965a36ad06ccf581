use finepoints_core::fintop::FiniteTopology;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// The specialization preorder as a DOT digraph: one cluster per class of
/// mutually specializing points (drawn as a cycle), and an edge `g -> f`
/// between classes when `g` lies in the minimal neighbourhood of `f`, after
/// transitive reduction.
pub fn specialization_dot(name: &str, labels: &[String], top: &FiniteTopology) -> String {
    let classes = top.specialization_classes();
    let rep = |c: usize| classes[c][0];
    // below[a][b]: class a specializes to class b, a != b
    let n = classes.len();
    let below: Vec<Vec<bool>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| a != b && top.specializes(rep(a), rep(b)))
                .collect()
        })
        .collect();

    let mut out = format!(
        "digraph {} {{\n  compound=true;\n  node [shape=box];\n",
        quote(name)
    );
    for (c, members) in classes.iter().enumerate() {
        if members.len() == 1 {
            out.push_str(&format!("  {};\n", quote(&labels[members[0]])));
            continue;
        }
        out.push_str(&format!("  subgraph cluster_{c} {{\n    style=rounded;\n"));
        for &m in members {
            out.push_str(&format!("    {};\n", quote(&labels[m])));
        }
        for (i, &m) in members.iter().enumerate() {
            let next = members[(i + 1) % members.len()];
            out.push_str(&format!(
                "    {} -> {};\n",
                quote(&labels[m]),
                quote(&labels[next])
            ));
        }
        out.push_str("  }\n");
    }
    for a in 0..n {
        for b in 0..n {
            if !below[a][b] || (0..n).any(|m| below[a][m] && below[m][b]) {
                continue;
            }
            let mut attrs = Vec::new();
            if classes[a].len() > 1 {
                attrs.push(format!("ltail=cluster_{a}"));
            }
            if classes[b].len() > 1 {
                attrs.push(format!("lhead=cluster_{b}"));
            }
            let attrs = if attrs.is_empty() {
                String::new()
            } else {
                format!(" [{}]", attrs.join(", "))
            };
            out.push_str(&format!(
                "  {} -> {}{};\n",
                quote(&labels[rep(a)]),
                quote(&labels[rep(b)]),
                attrs
            ));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use finepoints_core::fintop::PointSet;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("p{i}")).collect()
    }

    #[test]
    fn chain_is_reduced() {
        // 0 is the generic point: N(0) = {0}, N(1) = {0,1}, N(2) = {0,1,2}
        let t = FiniteTopology::from_min_nbhds(vec![
            PointSet::from_indices(3, [0]),
            PointSet::from_indices(3, [0, 1]),
            PointSet::from_indices(3, [0, 1, 2]),
        ])
        .unwrap();
        let dot = specialization_dot("chain", &labels(3), &t);
        assert!(dot.contains("\"p0\" -> \"p1\";"));
        assert!(dot.contains("\"p1\" -> \"p2\";"));
        assert!(!dot.contains("\"p0\" -> \"p2\""));
    }

    #[test]
    fn indiscrete_pair_is_a_cluster() {
        let dot = specialization_dot("pair", &labels(2), &FiniteTopology::indiscrete(2));
        assert!(dot.contains("subgraph cluster_0"));
        assert!(dot.contains("\"p0\" -> \"p1\";") && dot.contains("\"p1\" -> \"p0\";"));
    }

    #[test]
    fn quotes_are_escaped() {
        assert_eq!(quote("a\"b\\"), "\"a\\\"b\\\\\"");
    }
}
