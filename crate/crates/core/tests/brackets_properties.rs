mod common;

use sublattice::{parse_word, validate_bracketing, BinaryTree};

use common::{all_tamari, all_words, catalan, fn_from_right_bracketing};

#[test]
fn generator_matches_catalan() {
    for n in 1..=8 {
        assert_eq!(all_words(n + 1).len() as u64, catalan(n));
    }
}

#[test]
fn parse_then_print_is_identity_up_to_8() {
    for n in 1..=8 {
        for word in all_words(n + 1) {
            let tree = parse_word(&word).unwrap();
            assert_eq!(tree.to_word(), word);
            assert_eq!(tree.leaf_count(), n + 1);
        }
    }
}

#[test]
fn word_tree_fn_tree_word_up_to_8() {
    for n in 1..=8 {
        for word in all_words(n + 1) {
            let e = parse_word(&word).unwrap().to_bracketing_fn().unwrap();
            assert!(validate_bracketing(e.values()).is_valid());
            assert_eq!(BinaryTree::from_bracketing_fn(&e).to_word(), word);
        }
    }
}

#[test]
fn fn_tree_fn_up_to_8() {
    for n in 1..=8 {
        for e in all_tamari(n) {
            let tree = BinaryTree::from_bracketing_fn(&e);
            assert_eq!(tree.leaf_count(), n + 1);
            assert_eq!(tree.to_bracketing_fn().unwrap(), e);
        }
    }
}

#[test]
fn tree_route_agrees_with_string_route_up_to_8() {
    for n in 1..=8 {
        for word in all_words(n + 1) {
            let tree = parse_word(&word).unwrap();
            let via_string = fn_from_right_bracketing(&tree.right_bracketing(), n);
            assert_eq!(tree.to_bracketing_fn().unwrap().values(), &via_string[..], "{word}");
        }
    }
}

#[test]
fn right_bracketing_opens_one_bracket_per_letter() {
    for word in all_words(7) {
        let rb = parse_word(&word).unwrap().right_bracketing();
        let chars: Vec<char> = rb.chars().collect();
        assert!(chars[0] == 'a');
        let opens = chars.iter().filter(|&&c| c == '(').count();
        assert_eq!(opens, 6);
        // Every '(' is immediately followed by a letter, and every letter
        // but the first is immediately preceded by '('.
        for (i, c) in chars.iter().enumerate() {
            if *c == '(' {
                assert!(chars[i + 1].is_ascii_lowercase());
            }
            if c.is_ascii_lowercase() && i > 0 {
                assert_eq!(chars[i - 1], '(');
            }
        }
    }
}
