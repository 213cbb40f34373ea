from free_group.domain import ReducedWord, alphabet


class SamplingService:
    """Seeded random words. Every caller passes its own random.Random."""

    @staticmethod
    def random_letters(rng, rank, length):
        letters = alphabet(rank)
        return [rng.choice(letters) for _ in range(length)]

    @staticmethod
    def random_word(rng, rank, length):
        """Uniform element of S_length(e)."""
        letters = alphabet(rank)
        word = []
        for _ in range(length):
            if word:
                banned = word[-1].inverse()
                word.append(rng.choice([s for s in letters if s != banned]))
            else:
                word.append(rng.choice(letters))
        return ReducedWord(rank, tuple(word))

    @staticmethod
    def random_word_upto(rng, rank, max_length):
        return SamplingService.random_word(rng, rank, rng.randint(0, max_length))

    @staticmethod
    def random_extension(rng, word, length):
        """Extend `word` by random letters to total length `length`."""
        letters = alphabet(word.rank)
        out = list(word.letters)
        while len(out) < length:
            banned = out[-1].inverse() if out else None
            out.append(rng.choice([s for s in letters if s != banned]))
        return ReducedWord(word.rank, tuple(out))
