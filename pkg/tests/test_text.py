import pytest

from captioncheck import Token, analyze, lemmatize, split_sentences, tokenize_and_lemmatize


def spans_to_text(caption, spans):
    raw = caption.encode("utf-8")
    return [raw[a:b].decode("utf-8") for a, b in spans]


class TestSplitSentences:
    def test_simple_split(self):
        cap = "Rates rose. Then they fell."
        assert spans_to_text(cap, split_sentences(cap)) == [
            "Rates rose.", "Then they fell."]

    def test_decimal_point_not_a_boundary(self):
        cap = "The rate hit 4.5 percent. It later fell."
        assert spans_to_text(cap, split_sentences(cap)) == [
            "The rate hit 4.5 percent.", "It later fell."]

    def test_abbreviation_not_a_boundary(self):
        cap = "U.S. unemployment fell. Rates stayed flat."
        assert spans_to_text(cap, split_sentences(cap)) == [
            "U.S. unemployment fell.", "Rates stayed flat."]

    def test_question_and_exclamation(self):
        cap = "Did prices fall? They soared!"
        assert spans_to_text(cap, split_sentences(cap)) == [
            "Did prices fall?", "They soared!"]

    def test_trailing_unterminated_sentence(self):
        cap = "Prices fell. Then a rebound"
        assert spans_to_text(cap, split_sentences(cap)) == [
            "Prices fell.", "Then a rebound"]

    def test_empty_and_whitespace(self):
        assert split_sentences("") == []
        assert split_sentences("  \n ") == []

    def test_spans_are_byte_offsets(self):
        cap = "Café prices rose. They fell."
        spans = split_sentences(cap)
        assert spans_to_text(cap, spans) == ["Café prices rose.", "They fell."]
        # the accented character occupies two bytes
        assert spans[1][0] == cap.encode("utf-8").index(b"They")


class TestLemmatize:
    @pytest.mark.parametrize("word,lemma", [
        ("rose", "rise"), ("risen", "rise"), ("rising", "rise"), ("rises", "rise"),
        ("fell", "fall"), ("fallen", "fall"), ("falling", "fall"),
        ("increased", "increase"), ("increasing", "increase"),
        ("grew", "grow"), ("grown", "grow"), ("growing", "grow"),
        ("declined", "decline"), ("declining", "decline"),
        ("dropped", "drop"), ("dropping", "drop"),
        ("dipped", "dip"), ("peaked", "peak"), ("peaks", "peak"),
        ("soared", "soar"), ("plummeted", "plummet"), ("plunged", "plunge"),
        ("surged", "surge"), ("spiked", "spike"), ("jumped", "jump"),
        ("climbed", "climb"), ("sank", "sink"), ("sunk", "sink"),
        ("leapt", "leap"), ("tumbled", "tumble"), ("slumped", "slump"),
        ("rallied", "rally"), ("skyrocketed", "skyrocket"),
        ("bottomed", "bottom"), ("topped", "top"),
        ("maxima", "maximum"), ("minima", "minimum"),
    ])
    def test_inflections(self, word, lemma):
        assert lemmatize(word) == lemma

    @pytest.mark.parametrize("word", ["during", "nothing", "spring", "thing"])
    def test_ing_nouns_left_alone(self, word):
        assert lemmatize(word) == word

    def test_case_insensitive(self):
        assert lemmatize("Rose") == "rise"
        assert lemmatize("FELL") == "fall"

    def test_plural_rules(self):
        assert lemmatize("prices") == "price"
        assert lemmatize("countries") == "country"
        assert lemmatize("rates") == "rate"

    def test_unknown_words_pass_through(self):
        assert lemmatize("zorbled") == "zorbled"
        assert lemmatize("chart") == "chart"


class TestTokenize:
    def test_basic_tokens(self):
        toks = tokenize_and_lemmatize("Rates rose in 2008.")
        assert [t.text for t in toks] == ["Rates", "rose", "in", "2008", "."]
        assert toks[1].lemma == "rise"
        assert toks[3].is_number and not toks[0].is_number

    def test_decade_token(self):
        toks = tokenize_and_lemmatize("During the 1990s prices fell.")
        assert "1990s" in [t.text for t in toks]

    def test_grouped_number_single_token(self):
        toks = tokenize_and_lemmatize("Sales hit 1,200,000 units.")
        assert "1,200,000" in [t.text for t in toks]

    def test_quarter_token(self):
        toks = tokenize_and_lemmatize("Profits grew in Q3 2012.")
        assert "Q3" in [t.text for t in toks]

    def test_possessive_stays_attached(self):
        toks = tokenize_and_lemmatize("Korea's GDP rose.")
        assert toks[0].text == "Korea's"

    def test_byte_spans_recover_text(self):
        cap = "café rose 4.5% in 2020"
        raw = cap.encode("utf-8")
        for tok in tokenize_and_lemmatize(cap):
            a, b = tok.byte_span
            assert raw[a:b].decode("utf-8") == tok.text

    def test_sentence_index_propagates(self):
        toks = tokenize_and_lemmatize("It fell.", sentence_span=None, sentence_index=4)
        assert all(t.sentence_index == 4 for t in toks)

    def test_punctuation_tokens(self):
        toks = tokenize_and_lemmatize("first, second; third")
        texts = [t.text for t in toks]
        assert "," in texts and ";" in texts
        comma = next(t for t in toks if t.text == ",")
        assert not comma.is_word


class TestAnalyze:
    def test_sentences_and_tokens(self):
        sents = analyze("Rates rose in 2008. They fell in 2009.")
        assert len(sents) == 2
        assert sents[0].tokens[0].sentence_index == 0
        assert sents[1].tokens[0].sentence_index == 1
        assert sents[1].tokens[0].text == "They"

    def test_token_spans_are_caption_absolute(self):
        cap = "Rates rose. They fell in 2009."
        raw = cap.encode("utf-8")
        sents = analyze(cap)
        tok = sents[1].tokens[-2]
        a, b = tok.byte_span
        assert raw[a:b].decode("utf-8") == "2009"
