import os

from util import document
from util import oracle
from util.cardinal import CardTag
from util.command import Group, argument, command


class Generate(Group):
    @command(brief='Generate a seeded proper K-poset',
             arguments=[argument('--seed', type=int, default=0),
                        argument('--n-min', type=int, default=2, help='minimal nodes'),
                        argument('--n-max2', type=int, default=1, help='height-two maxima'),
                        argument('--n-h', type=int, default=1, help='height-one nodes over two or more minimal nodes'),
                        argument('--card', type=CardTag.parse, default=CardTag('aleph0', 0),
                                 help='class cardinality: finite:n, aleph0 or beta'),
                        argument('--out-dir', help='write poset_SEED.json there instead of stdout')])
    def gen(self, args):
        params = oracle.GenParams(args.n_min, args.n_max2, args.n_h, args.card, args.seed)
        text = document.serialize(oracle.gen_proper(params))
        if args.out_dir:
            document.write_text(os.path.join(args.out_dir, f'poset_{args.seed}.json'), text)
        else:
            print(text, end='')
        self.logger.info(f'Generated poset for {params}')


def setup(registry):
    registry.add_group(Generate(registry))
