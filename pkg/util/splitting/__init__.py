from .certificate import *
from .split import *
from .expand import *
from .simplify import *
from .glue import *
